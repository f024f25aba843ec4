//! Cross relations between momenta and coordinates, and the induced left
//! action of the momentum algebra on the coordinate algebra.
//!
//! A [`MixedElement`] is a sum of `position * momentum` words with every
//! momentum factor to the right. Momentum letters are moved right with the
//! closed-form rules
//!
//! ```text
//! P_0 x^0 = x^0 P_0 - i            P_m x^0 = (x^0 + i/kappa) P_m
//! P_m x^n = x^n P_m - i δ_mn       Exp[l] x^0 = (x^0 - i l/kappa) Exp[l]
//! P_0 W = W (P_0 + K)              P_m W = W (e^{-K/kappa} P_m + s_m)
//! Exp[l] W = e^{l K/kappa} W Exp[l]
//! ```
//!
//! so no exponential of a momentum is ever expanded. The action `p ▷ a` is
//! the normal-ordered `p a` with the counit applied to the momentum part.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::metric::{g2, DIM};
use crate::minkowski::{render_sum, shifted_power, PosKey, PositionElement};
use crate::momentum::{constants, MomKey, MomentumElement};
use crate::report::Outcome;
use crate::scalar::{GaussianRational, ScalarValue};
use crate::tensor::BasisAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    /// `P_mu`
    P(usize),
    Exp(i32),
}

impl Letter {
    fn key(self) -> MomKey {
        match self {
            Letter::P(0) => MomKey { d: 1, ..MomKey::unit() },
            Letter::P(m) => {
                let mut k = MomKey::unit();
                k.p[m - 1] = 1;
                k
            }
            Letter::Exp(l) => MomKey { lambda: l, ..MomKey::unit() },
        }
    }
}

fn letters(key: &MomKey) -> Vec<Letter> {
    let mut out = Vec::new();
    if key.lambda != 0 {
        out.push(Letter::Exp(key.lambda));
    }
    out.extend(std::iter::repeat_n(Letter::P(0), key.d as usize));
    for m in 0..3 {
        out.extend(std::iter::repeat_n(Letter::P(m + 1), key.p[m] as usize));
    }
    out
}

fn i_over_kappa() -> ScalarValue {
    &ScalarValue::i() * &ScalarValue::kappa_pow(-1)
}

/// `L a = keep L + drop` for a single momentum letter.
fn pass_letter(letter: Letter, a: &PositionElement) -> (PositionElement, PositionElement) {
    let mut keep = PositionElement::zero();
    let mut drop = PositionElement::zero();
    let minus_i = -ScalarValue::i();
    for (k, c) in a.terms() {
        match letter {
            Letter::P(0) => {
                keep.add_term(k.clone(), c.clone());
                drop.add_term(k.clone(), c * &k.wave.time_scalar());
                if k.t > 0 {
                    let key = PosKey { t: k.t - 1, ..k.clone() };
                    drop.add_term(key, &(c * &minus_i) * &ScalarValue::from_int(k.t as i64));
                }
            }
            Letter::P(m) => {
                let shrink = k.wave.exp_time(-1);
                let s = &k.wave.spatial[m - 1];
                for (t, b) in shifted_power(k.t, &i_over_kappa()) {
                    let key = PosKey { t, ..k.clone() };
                    let cb = c * &b;
                    keep.add_term(key.clone(), &cb * &shrink);
                    drop.add_term(key, &cb * s);
                }
                let am = k.x[m - 1];
                if am > 0 {
                    let mut key = k.clone();
                    key.x[m - 1] -= 1;
                    drop.add_term(key, &(c * &minus_i) * &ScalarValue::from_int(am as i64));
                }
            }
            Letter::Exp(l) => {
                let grow = k.wave.exp_time(l as i64);
                let shift = i_over_kappa().scale(&GaussianRational::from_int(-(l as i64)));
                for (t, b) in shifted_power(k.t, &shift) {
                    keep.add_term(PosKey { t, ..k.clone() }, &(c * &b) * &grow);
                }
            }
        }
    }
    (keep, drop)
}

/// `L ▷ a`
fn act_letter(letter: Letter, a: &PositionElement) -> PositionElement {
    let (keep, drop) = pass_letter(letter, a);
    match letter {
        Letter::P(_) => drop,
        // counit of Exp[l] is 1
        Letter::Exp(_) => &keep + &drop,
    }
}

/// Left action of one basis monomial.
pub fn act_key(key: &MomKey, a: &PositionElement) -> PositionElement {
    let mut cur = a.clone();
    for l in letters(key) {
        if cur.is_zero() {
            break;
        }
        cur = act_letter(l, &cur);
    }
    cur
}

/// Left action `p ▷ a`.
pub fn act(p: &MomentumElement, a: &PositionElement) -> PositionElement {
    let mut out = PositionElement::zero();
    for (k, c) in p.terms() {
        out = &out + &act_key(k, a).scale(c);
    }
    out
}

/// `∂_i ▷ a`
pub fn act_derivative(i: usize, a: &PositionElement) -> PositionElement {
    act(&constants().del[i], a)
}

/// `f^i_j ▷ a`
pub fn act_f(i: usize, j: usize, a: &PositionElement) -> PositionElement {
    act(constants().f.up(i, j), a)
}

/// Normal-ordered sum of `position * momentum` words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MixedElement {
    terms: BTreeMap<(PosKey, MomKey), ScalarValue>,
}

impl MixedElement {
    pub fn zero() -> Self {
        MixedElement::default()
    }

    pub fn one() -> Self {
        MixedElement::from_position(&PositionElement::one())
    }

    pub fn from_position(a: &PositionElement) -> Self {
        MixedElement::product(a, &MomentumElement::one())
    }

    pub fn from_momentum(p: &MomentumElement) -> Self {
        MixedElement::product(&PositionElement::one(), p)
    }

    /// `a * p`, already in normal order.
    pub fn product(a: &PositionElement, p: &MomentumElement) -> Self {
        let mut out = MixedElement::zero();
        for (ka, ca) in a.terms() {
            for (kp, cp) in p.terms() {
                out.add_term(ka.clone(), *kp, ca * cp);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(PosKey, MomKey), &ScalarValue)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: PosKey, p: MomKey, c: ScalarValue) {
        if c.is_zero() {
            return;
        }
        let key = (a, p);
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, s: &ScalarValue) -> MixedElement {
        let mut out = MixedElement::zero();
        for ((a, p), c) in &self.terms {
            out.add_term(a.clone(), *p, c * s);
        }
        out
    }

    /// The pure-position part if there is no momentum factor anywhere.
    pub fn as_position(&self) -> Option<PositionElement> {
        let mut out = PositionElement::zero();
        for ((a, p), c) in &self.terms {
            if *p != MomKey::unit() {
                return None;
            }
            out.add_term(a.clone(), c.clone());
        }
        Some(out)
    }

    /// The pure-momentum part if there is no coordinate factor anywhere.
    pub fn as_momentum(&self) -> Option<MomentumElement> {
        let mut out = MomentumElement::zero();
        for ((a, p), c) in &self.terms {
            if *a != PosKey::unit() {
                return None;
            }
            out.add_term(*p, c.clone());
        }
        Some(out)
    }

    /// Applies the momentum counit (the vacuum projection).
    pub fn project(&self) -> PositionElement {
        let mut out = PositionElement::zero();
        for ((a, p), c) in &self.terms {
            if p.p == [0; 3] && p.d == 0 {
                out.add_term(a.clone(), c.clone());
            }
        }
        out
    }

    /// Product of two normal-ordered elements.
    pub fn mul(&self, other: &MixedElement) -> MixedElement {
        let mut out = MixedElement::zero();
        for ((a, p), c) in &self.terms {
            let left = PositionElement::from_key(a.clone(), c.clone());
            // group the right factor by its momentum part
            let mut by_mom: BTreeMap<MomKey, PositionElement> = BTreeMap::new();
            for ((b, q), d) in &other.terms {
                by_mom.entry(*q).or_default().add_term(b.clone(), d.clone());
            }
            for (q, b) in by_mom {
                let moved = commute_right(p, &b);
                for ((a2, p2), c2) in &moved.terms {
                    let pos = left.normal_mul(&PositionElement::from_key(a2.clone(), c2.clone()));
                    let mom = MomentumElement::mul_keys(p2, &q);
                    for (pk, pc) in mom.terms() {
                        for (ak, ac) in pos.terms() {
                            out.add_term(ak.clone(), *pk, ac * pc);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &MixedElement) -> MixedElement {
        &self.mul(other) - &other.mul(self)
    }
}

/// Normal order of `p a`: moves every letter of the momentum monomial `p`
/// to the right of `a`.
pub fn commute_right(p: &MomKey, a: &PositionElement) -> MixedElement {
    let mut cur = MixedElement::from_position(a);
    for l in letters(p) {
        let mut by_mom: BTreeMap<MomKey, PositionElement> = BTreeMap::new();
        for ((b, q), c) in &cur.terms {
            by_mom.entry(*q).or_default().add_term(b.clone(), c.clone());
        }
        let mut next = MixedElement::zero();
        for (q, b) in by_mom {
            let (keep, drop) = pass_letter(l, &b);
            let lq = q_mul(l.key(), q);
            for (k, c) in keep.terms() {
                next.add_term(k.clone(), lq, c.clone());
            }
            for (k, c) in drop.terms() {
                next.add_term(k.clone(), q, c.clone());
            }
        }
        cur = next;
    }
    cur
}

fn q_mul(a: MomKey, b: MomKey) -> MomKey {
    *MomentumElement::mul_keys(&a, &b).terms().next().expect("monomial product").0
}

impl Add for &MixedElement {
    type Output = MixedElement;
    fn add(self, rhs: &MixedElement) -> MixedElement {
        let mut out = self.clone();
        for ((a, p), c) in &rhs.terms {
            out.add_term(a.clone(), *p, c.clone());
        }
        out
    }
}

impl Sub for &MixedElement {
    type Output = MixedElement;
    fn sub(self, rhs: &MixedElement) -> MixedElement {
        self + &-rhs
    }
}

impl Neg for &MixedElement {
    type Output = MixedElement;
    fn neg(self) -> MixedElement {
        self.scale(&ScalarValue::from_int(-1))
    }
}

impl fmt::Display for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_sum(
            f,
            self.terms.iter().map(|((a, p), c)| {
                let mut factors = a.factors();
                factors.extend(p.factors());
                (factors, c)
            }),
        )
    }
}

fn mixed_p(mu: usize) -> MixedElement {
    MixedElement::from_momentum(&MomentumElement::p(mu))
}

fn mixed_x(mu: usize) -> MixedElement {
    MixedElement::from_position(&PositionElement::x(mu))
}

/// The generator cross relations and the commutators of the vector fields
/// `e^i` with the coordinates.
pub fn verify_cross_relations() -> Vec<Outcome> {
    let mut out = Vec::new();
    let one = MixedElement::one();
    let ik = i_over_kappa();
    let i = ScalarValue::i();
    for mu in 0..4 {
        for nu in 0..4 {
            let lhs = mixed_p(mu).mul(&mixed_x(nu));
            // expected: x^nu P_mu + correction
            let mut rhs = mixed_x(nu).mul(&mixed_p(mu));
            if mu == nu {
                rhs = &rhs - &one.scale(&i);
            }
            if mu != 0 && nu == 0 {
                rhs = &rhs + &mixed_p(mu).scale(&ik);
            }
            out.push(Outcome::zero_check(format!("cross[P{mu},x{nu}]"), "1.9", &lhs - &rhs));
        }
    }
    for l in [-2, -1, 1, 2] {
        for nu in 0..4 {
            let e = MixedElement::from_momentum(&MomentumElement::exp(l));
            let lhs = e.mul(&mixed_x(nu));
            let mut rhs = mixed_x(nu).mul(&e);
            if nu == 0 {
                rhs = &rhs - &e.scale(&ik.scale(&GaussianRational::from_int(l as i64)));
            }
            out.push(Outcome::zero_check(format!("cross[Exp[{l}],x{nu}]"), "1.9", &lhs - &rhs));
        }
    }
    let k = constants();
    let e = |i: usize| MixedElement::from_momentum(&k.e[i]);
    for mu in 0..4 {
        for nu in 0..4 {
            let lhs = e(mu).commutator(&mixed_x(nu));
            let mut rhs = e(nu).scale(&ScalarValue::from_int(g2(0, mu)));
            rhs = &rhs - &e(0).scale(&ScalarValue::from_int(g2(mu, nu)));
            rhs = &rhs - &e(4).scale(&ScalarValue::from_int(g2(mu, nu)));
            out.push(Outcome::zero_check(format!("vector-field[e{mu},x{nu}]"), "1.11", &lhs - &rhs.scale(&ik)));
        }
    }
    for mu in 0..4 {
        let lhs = e(4).commutator(&mixed_x(mu));
        let rhs = e(mu).scale(&-&ik);
        out.push(Outcome::zero_check(format!("vector-field[e4,x{mu}]"), "1.11", &lhs - &rhs));
    }
    out
}

/// `p ▷ (ab) - Σ (p₁ ▷ a)(p₂ ▷ b)`
pub fn module_algebra_residual(p: &MomentumElement, a: &PositionElement, b: &PositionElement) -> PositionElement {
    let lhs = act(p, &a.normal_mul(b));
    let mut rhs = PositionElement::zero();
    for (legs, c) in p.coproduct().terms() {
        let left = act_key(&legs[0], a);
        if left.is_zero() {
            continue;
        }
        let right = act_key(&legs[1], b);
        rhs = &rhs + &left.normal_mul(&right).scale(c);
    }
    &lhs - &rhs
}

/// `∂_i a - a ∂_i - Σ_j (∂_j ▷ a) f^j_i` as an operator identity.
pub fn derivative_operator_residual(i: usize, a: &PositionElement) -> MixedElement {
    let k = constants();
    let del = MixedElement::from_momentum(&k.del[i]);
    let am = MixedElement::from_position(a);
    let lhs = &del.mul(&am) - &am.mul(&del);
    let mut rhs = MixedElement::zero();
    for j in 0..DIM {
        let dj = act_derivative(j, a);
        if dj.is_zero() {
            continue;
        }
        rhs = &rhs + &MixedElement::product(&dj, k.f.up(j, i));
    }
    &lhs - &rhs
}

/// `(f^i_j ▷ a*)* - f_j^i ▷ a`
pub fn hermiticity_residual(i: usize, j: usize, a: &PositionElement) -> PositionElement {
    let lhs = act_f(i, j, &a.star()).star();
    let rhs = act(&constants().f.low(j, i), a);
    &lhs - &rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(mu: usize) -> PositionElement {
        PositionElement::x(mu)
    }

    #[test]
    fn cross_relation_examples() {
        let p0x0 = mixed_p(0).mul(&mixed_x(0));
        assert_eq!(p0x0, &mixed_x(0).mul(&mixed_p(0)) - &MixedElement::one().scale(&ScalarValue::i()));
        let p1x0 = mixed_p(1).mul(&mixed_x(0));
        let expected = MixedElement::product(&(&x(0) + &PositionElement::scalar(i_over_kappa())), &MomentumElement::p(1));
        assert_eq!(p1x0, expected);
        let ex = MixedElement::from_momentum(&MomentumElement::exp(1)).mul(&mixed_x(0));
        let expected = MixedElement::product(&(&x(0) - &PositionElement::scalar(i_over_kappa())), &MomentumElement::exp(1));
        assert_eq!(ex, expected);
    }

    #[test]
    fn all_cross_relations() {
        for o in verify_cross_relations() {
            assert!(o.passed(), "{}: {}", o.id, o.residual);
        }
    }

    #[test]
    fn action_examples() {
        let minus_i = PositionElement::scalar(-ScalarValue::i());
        assert_eq!(act(&MomentumElement::p(0), &x(0)), minus_i);
        assert!(act(&MomentumElement::p(1), &x(0)).is_zero());
        let w = PositionElement::label_wave(3);
        for mu in 0..4 {
            let got = act(&MomentumElement::p(mu), &w);
            assert_eq!(got, w.scale(&ScalarValue::k(3, mu as u8)));
        }
        assert!(act(&MomentumElement::exp(2), &PositionElement::one()).is_one());
    }

    #[test]
    fn derivative_examples() {
        for mu in 0..4 {
            for nu in 0..4 {
                let d = act_derivative(mu, &x(nu));
                let expected = if mu == nu { PositionElement::one() } else { PositionElement::zero() };
                assert_eq!(d, expected, "∂_{mu} x{nu}");
            }
            assert!(act_derivative(4, &x(mu)).is_zero());
        }
        let x0sq = x(0).pow(2);
        assert_eq!(act_derivative(4, &x0sq), PositionElement::scalar(-i_over_kappa()));
        assert_eq!(act_f(0, 4, &x(0)), PositionElement::scalar(-i_over_kappa()));
        assert_eq!(act_f(0, 0, &x(0)), x(0));
    }

    #[test]
    fn action_is_projected_commutation() {
        let a = &(&x(0).pow(2) * &x(1)) + &(&x(2) * &PositionElement::label_wave(1));
        for p in [&constants().f.entries[0][0], &constants().del[0], &constants().e[4]] {
            let mut via_words = PositionElement::zero();
            for (k, c) in p.terms() {
                via_words = &via_words + &commute_right(k, &a).project().scale(c);
            }
            assert_eq!(via_words, act(p, &a));
        }
    }

    #[test]
    fn exp_conjugation_series_truncates() {
        // sum_n (ad_{P0/kappa})^n x^0 / n! up to n = 4, then times Exp[1]
        let p0 = mixed_p(0).scale(&ScalarValue::kappa_pow(-1));
        let mut term = mixed_x(0);
        let mut series = term.clone();
        let mut fact = 1i64;
        for n in 1..=4 {
            term = p0.commutator(&term);
            fact *= n;
            series = &series + &term.scale(&ScalarValue::from_ratio(1, fact));
        }
        let exp = MixedElement::from_momentum(&MomentumElement::exp(1));
        assert_eq!(exp.mul(&mixed_x(0)), series.mul(&exp));
    }
}
