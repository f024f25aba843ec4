//! The commutative momentum Hopf algebra generated by `P_0..P_3` and
//! `Exp[l] = e^{l P_0 / kappa}`, with the deformed coproduct
//! `Δ(P_m) = P_m ⊗ 1 + e^{-P_0/kappa} ⊗ P_m`, and its named elements:
//! the 5×5 matrix `f^i_j`, the derivatives `∂_i`, the vector fields `e^i`
//! and the wave operator `□`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::metric::{delta, g, DIM};
use crate::minkowski::render_sum;
use crate::report::Outcome;
use crate::scalar::{power, GaussianRational, Monomial, ScalarValue};
use crate::tensor::{BasisAlgebra, Tensor};

/// Basis monomial `P1^p1 P2^p2 P3^p3 P0^d Exp[lambda]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomKey {
    pub p: [u32; 3],
    pub d: u32,
    pub lambda: i32,
}

impl MomKey {
    pub fn unit() -> Self {
        MomKey::default()
    }

    fn mul(self, other: MomKey) -> MomKey {
        MomKey {
            p: [self.p[0] + other.p[0], self.p[1] + other.p[1], self.p[2] + other.p[2]],
            d: self.d + other.d,
            lambda: self.lambda + other.lambda,
        }
    }

    pub(crate) fn factors(&self) -> Vec<String> {
        let mut out = Vec::new();
        for m in 0..3 {
            if self.p[m] > 0 {
                out.push(power(format!("P{}", m + 1), self.p[m] as i64));
            }
        }
        if self.d > 0 {
            out.push(power("P0".to_string(), self.d as i64));
        }
        if self.lambda != 0 {
            out.push(format!("Exp[{}]", self.lambda));
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MomentumElement {
    terms: BTreeMap<MomKey, ScalarValue>,
}

impl MomentumElement {
    pub fn zero() -> Self {
        MomentumElement::default()
    }

    pub fn one() -> Self {
        MomentumElement::scalar(ScalarValue::one())
    }

    pub fn scalar(c: ScalarValue) -> Self {
        MomentumElement::from_key(MomKey::unit(), c)
    }

    pub fn from_key(key: MomKey, c: ScalarValue) -> Self {
        let mut out = MomentumElement::zero();
        out.add_term(key, c);
        out
    }

    /// `P_mu`, `mu` in 0..=3.
    pub fn p(mu: usize) -> Self {
        assert!(mu < 4, "momentum index out of range");
        let mut key = MomKey::unit();
        if mu == 0 {
            key.d = 1;
        } else {
            key.p[mu - 1] = 1;
        }
        MomentumElement::from_key(key, ScalarValue::one())
    }

    /// `e^{lambda P_0 / kappa}`
    pub fn exp(lambda: i32) -> Self {
        MomentumElement::from_key(MomKey { lambda, ..MomKey::unit() }, ScalarValue::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MomKey, &ScalarValue)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_scalar(&self) -> Option<ScalarValue> {
        match self.terms.len() {
            0 => Some(ScalarValue::zero()),
            1 => {
                let (k, c) = self.terms.iter().next()?;
                (*k == MomKey::unit()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, key: MomKey, c: ScalarValue) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, s: &ScalarValue) -> MomentumElement {
        let mut out = MomentumElement::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c * s);
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> MomentumElement {
        self.scale(&ScalarValue::from_int(n))
    }

    pub fn pow(&self, n: u32) -> MomentumElement {
        let mut acc = MomentumElement::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coproduct, extended multiplicatively from the generators.
    pub fn coproduct(&self) -> Tensor<MomentumElement> {
        let mut out = Tensor::zero(2);
        for (k, c) in &self.terms {
            out = out.add(&key_coproduct(*k).scale(c));
        }
        out
    }

    pub fn counit(&self) -> ScalarValue {
        let mut out = ScalarValue::zero();
        for (k, c) in &self.terms {
            if k.p == [0; 3] && k.d == 0 {
                out += c;
            }
        }
        out
    }

    /// `S(P_0) = -P_0`, `S(P_m) = -e^{P_0/kappa} P_m`, `S(Exp[l]) = Exp[-l]`.
    pub fn antipode(&self) -> MomentumElement {
        let mut out = MomentumElement::zero();
        for (k, c) in &self.terms {
            let n = k.p.iter().sum::<u32>() + k.d;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let key = MomKey { p: k.p, d: k.d, lambda: -k.lambda + k.p.iter().sum::<u32>() as i32 };
            out.add_term(key, c.scale(&GaussianRational::from_int(sign)));
        }
        out
    }

    /// Generators are hermitian and commute, so only coefficients change.
    pub fn star(&self) -> MomentumElement {
        let mut out = MomentumElement::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.conj());
        }
        out
    }

    /// Large-kappa expansion: `Exp[l]` becomes the series of `e^{l P_0/kappa}`,
    /// coefficients are expanded with [`ScalarValue::kappa_expand`], and
    /// everything below `kappa^-order` is dropped.
    pub fn kappa_expand(&self, order: u32) -> MomentumElement {
        let floor = -(order as i32);
        let mut out = MomentumElement::zero();
        for (k, c) in &self.terms {
            for (m, g0) in c.terms() {
                if m.kappa < floor {
                    continue;
                }
                let depth = (m.kappa - floor) as u32;
                let mut coeff = BigRational::one();
                for n in 0..=depth {
                    if n > 0 {
                        if k.lambda == 0 {
                            break;
                        }
                        coeff = coeff * BigRational::from_integer(BigInt::from(k.lambda))
                            / BigRational::from_integer(BigInt::from(n));
                    }
                    let mono = Monomial { kappa: m.kappa - n as i32, ..m.clone() };
                    let scalar = ScalarValue::from_term(mono, g0 * &GaussianRational::real(coeff.clone()));
                    let key = MomKey { p: k.p, d: k.d + n, lambda: 0 };
                    out.add_term(key, scalar.kappa_expand(order));
                }
            }
        }
        out
    }
}

fn key_coproduct(k: MomKey) -> Tensor<MomentumElement> {
    let unit = MomKey::unit();
    let mut acc = Tensor::pure(
        vec![MomKey { lambda: k.lambda, ..unit }, MomKey { lambda: k.lambda, ..unit }],
        ScalarValue::one(),
    );
    let p0 = MomKey { d: 1, ..unit };
    let prim0 = Tensor::pure(vec![p0, unit], ScalarValue::one()).add(&Tensor::pure(vec![unit, p0], ScalarValue::one()));
    for _ in 0..k.d {
        acc = acc.mul(&prim0);
    }
    for m in 0..3 {
        let mut pm = unit;
        pm.p[m] = 1;
        let dm = Tensor::pure(vec![pm, unit], ScalarValue::one())
            .add(&Tensor::pure(vec![MomKey { lambda: -1, ..unit }, pm], ScalarValue::one()));
        for _ in 0..k.p[m] {
            acc = acc.mul(&dm);
        }
    }
    acc
}

impl BasisAlgebra for MomentumElement {
    type Key = MomKey;

    fn unit_key() -> MomKey {
        MomKey::unit()
    }

    fn from_terms(terms: Vec<(MomKey, ScalarValue)>) -> Self {
        let mut out = MomentumElement::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn basis_terms(&self) -> Vec<(MomKey, ScalarValue)> {
        self.terms.iter().map(|(k, c)| (*k, c.clone())).collect()
    }

    fn mul_keys(a: &MomKey, b: &MomKey) -> Self {
        MomentumElement::from_key(a.mul(*b), ScalarValue::one())
    }
}

impl Add for &MomentumElement {
    type Output = MomentumElement;
    fn add(self, rhs: &MomentumElement) -> MomentumElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &MomentumElement {
    type Output = MomentumElement;
    fn sub(self, rhs: &MomentumElement) -> MomentumElement {
        self + &-rhs
    }
}

impl Neg for &MomentumElement {
    type Output = MomentumElement;
    fn neg(self) -> MomentumElement {
        self.scale_int(-1)
    }
}

impl Mul for &MomentumElement {
    type Output = MomentumElement;
    fn mul(self, rhs: &MomentumElement) -> MomentumElement {
        let mut out = MomentumElement::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka.mul(*kb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MomentumElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_sum(f, self.terms.iter().map(|(k, c)| (k.factors(), c)))
    }
}

/// `f^i_j` for `i, j` in `0..5`, stored row-major as `entries[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMatrix {
    pub entries: [[MomentumElement; DIM]; DIM],
}

impl FMatrix {
    /// `f^i_j`
    pub fn up(&self, i: usize, j: usize) -> &MomentumElement {
        &self.entries[i][j]
    }

    /// `f_i^j = g_ii g^jj f^i_j`
    pub fn low(&self, i: usize, j: usize) -> MomentumElement {
        self.entries[i][j].scale_int(g(i) * g(j))
    }
}

/// All named elements of the momentum algebra, built once.
#[derive(Clone, Debug)]
pub struct Constants {
    pub f: FMatrix,
    /// `∂_0..∂_4`
    pub del: [MomentumElement; DIM],
    /// `e^0..e^3` and `e^4`
    pub e: [MomentumElement; DIM],
    /// `□ = g^{mu nu} e_mu e_nu`
    pub boxk: MomentumElement,
}

fn c(num: i64, den: i64) -> ScalarValue {
    ScalarValue::from_ratio(num, den)
}

fn kappa(n: i32) -> ScalarValue {
    ScalarValue::kappa_pow(n)
}

pub fn build_constants() -> Constants {
    let half = c(1, 2);
    let ch = (&MomentumElement::exp(1) + &MomentumElement::exp(-1)).scale(&half);
    let sh = (&MomentumElement::exp(1) - &MomentumElement::exp(-1)).scale(&half);
    let p = |m: usize| MomentumElement::p(m);
    let p_sq = &(&p(1).pow(2) + &p(2).pow(2)) + &p(3).pow(2);
    // (1/2 kappa^2) e^{P0/kappa} P^2
    let quad = (&MomentumElement::exp(1) * &p_sq).scale(&(&half * &kappa(-2)));
    let inv_k = kappa(-1);

    let mut f: [[MomentumElement; DIM]; DIM] = Default::default();
    f[0][0] = &ch + &quad;
    f[0][4] = &sh + &quad;
    f[4][0] = &sh - &quad;
    f[4][4] = &ch - &quad;
    for m in 1..4 {
        f[0][m] = p(m).scale(&-&inv_k);
        f[m][0] = (&MomentumElement::exp(1) * &p(m)).scale(&-&inv_k);
        f[m][4] = f[m][0].clone();
        f[4][m] = p(m).scale(&inv_k);
        for n in 1..4 {
            f[m][n] = MomentumElement::scalar(ScalarValue::from_int(delta(m, n)));
        }
    }
    let f = FMatrix { entries: f };

    let i_kappa = &ScalarValue::i() * &kappa(1);
    let del: [MomentumElement; DIM] = std::array::from_fn(|i| {
        if i == 4 {
            (&f.entries[4][4] - &MomentumElement::one()).scale(&i_kappa)
        } else {
            f.entries[4][i].scale(&i_kappa)
        }
    });

    let e4 = (&ch - &quad).scale(&i_kappa);
    let e0 = (&sh + &quad).scale(&i_kappa);
    let e: [MomentumElement; DIM] = std::array::from_fn(|i| match i {
        0 => e0.clone(),
        4 => e4.clone(),
        m => (&MomentumElement::exp(1) * &p(m)).scale(&-ScalarValue::i()),
    });

    let mut boxk = MomentumElement::zero();
    for mu in 0..4 {
        // e_mu = g_mu mu e^mu; the two signs cancel against g^{mu mu}
        let lowered = e[mu].scale_int(g(mu));
        boxk = &boxk + &(&lowered * &lowered).scale_int(g(mu));
    }

    Constants { f, del, e, boxk }
}

/// Shared read-only constants.
pub fn constants() -> &'static Constants {
    static CONSTANTS: OnceLock<Constants> = OnceLock::new();
    CONSTANTS.get_or_init(build_constants)
}

/// Orthogonality of `f` and the coproduct laws of `f` and `∂`.
pub fn verify_f_identities() -> Vec<Outcome> {
    let k = constants();
    let f = &k.f;
    let mut out = Vec::new();
    for j in 0..DIM {
        for i in 0..DIM {
            let mut sum = MomentumElement::zero();
            for l in 0..DIM {
                sum = &sum + &(&f.low(l, j) * f.up(l, i));
            }
            let residual = &sum - &MomentumElement::scalar(ScalarValue::from_int(delta(i, j)));
            out.push(Outcome::zero_check(format!("f-orthogonality-lower[{j},{i}]"), "1.25", residual));
        }
    }
    for j in 0..DIM {
        for i in 0..DIM {
            let mut sum = MomentumElement::zero();
            for l in 0..DIM {
                sum = &sum + &(f.up(j, l) * &f.low(i, l));
            }
            let residual = &sum - &MomentumElement::scalar(ScalarValue::from_int(delta(i, j)));
            out.push(Outcome::zero_check(format!("f-orthogonality-upper[{j},{i}]"), "1.26", residual));
        }
    }
    for i in 0..DIM {
        for l in 0..DIM {
            let lhs = f.up(i, l).coproduct();
            let mut rhs = Tensor::zero(2);
            for j in 0..DIM {
                rhs = rhs.add(&Tensor::product_of(&[f.up(i, j).clone(), f.up(j, l).clone()]));
            }
            out.push(tensor_check(format!("f-coproduct[{i},{l}]"), "1.23", &lhs, &rhs));
        }
    }
    for i in 0..DIM {
        let lhs = k.del[i].coproduct();
        let mut rhs = Tensor::product_of(&[MomentumElement::one(), k.del[i].clone()]);
        for j in 0..DIM {
            rhs = rhs.add(&Tensor::product_of(&[k.del[j].clone(), f.up(j, i).clone()]));
        }
        out.push(tensor_check(format!("del-coproduct[{i}]"), "2.6", &lhs, &rhs));
    }
    out
}

pub(crate) fn tensor_check(
    id: String,
    tag: &str,
    lhs: &Tensor<MomentumElement>,
    rhs: &Tensor<MomentumElement>,
) -> Outcome {
    let diff = lhs.sub(rhs);
    if diff.is_zero() {
        Outcome::zero_check(id, tag, "0")
    } else {
        let terms: Vec<String> = diff
            .terms()
            .map(|(legs, c)| format!("({}) {:?}", c, legs))
            .collect();
        Outcome::zero_check(id, tag, terms.join(" + "))
    }
}

/// `□ = kappa^2 + (e^4)^2`, `∂_0^2 - Σ ∂_m^2 = □`, and the leading large-kappa
/// term of `□`.
pub fn verify_box_identities() -> Vec<Outcome> {
    let k = constants();
    let boxk = &k.boxk;
    let casimir = &(boxk - &MomentumElement::scalar(kappa(2))) - &(&k.e[4] * &k.e[4]);
    let mut wave = &k.del[0] * &k.del[0];
    for m in 1..4 {
        wave = &wave - &(&k.del[m] * &k.del[m]);
    }
    let dirac = &wave - boxk;
    let p_sq = &(&MomentumElement::p(1).pow(2) + &MomentumElement::p(2).pow(2)) + &MomentumElement::p(3).pow(2);
    let classical = &p_sq - &MomentumElement::p(0).pow(2);
    let limit = &boxk.kappa_expand(0) - &classical;
    let mut limit_outcome = Outcome::zero_check("box-classical-limit", "1.12", &limit);
    if limit.is_zero() {
        limit_outcome.residual = "0 (box -> -(P0^2 - |P|^2): e^mu -> i P^mu at leading order)".into();
    }
    vec![
        Outcome::zero_check("box-casimir", "1.12", casimir),
        Outcome::zero_check("del-square-equals-box", "2.9", dirac),
        limit_outcome,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_elements() {
        let k = constants();
        for m in 1..4 {
            assert_eq!(k.del[m], MomentumElement::p(m).scale(&ScalarValue::i()));
            let em = (&MomentumElement::exp(1) * &MomentumElement::p(m)).scale(&-ScalarValue::i());
            assert_eq!(k.e[m], em);
        }
        let i_kappa = &ScalarValue::i() * &kappa(1);
        for i in 0..4 {
            assert_eq!(k.e[i], k.f.up(i, 4).scale(&i_kappa), "e^{i}");
        }
        assert_eq!(k.e[4], k.f.up(4, 4).scale(&i_kappa));
    }

    #[test]
    fn hopf_maps_on_generators() {
        let p0 = MomentumElement::p(0);
        let one = MomentumElement::one();
        assert_eq!(p0.coproduct(), Tensor::product_of(&[p0.clone(), one.clone()]).add(&Tensor::product_of(&[one.clone(), p0.clone()])));
        assert_eq!(one.coproduct(), Tensor::one(2));
        let p1 = MomentumElement::p(1);
        let x = &MomentumElement::exp(1) * &p1;
        let expected = Tensor::product_of(&[p1.clone(), one.clone()])
            .add(&Tensor::product_of(&[MomentumElement::exp(-1), p1.clone()]))
            .mul(&Tensor::product_of(&[MomentumElement::exp(1), MomentumElement::exp(1)]));
        assert_eq!(x.coproduct(), expected);
        assert_eq!(p1.antipode(), (&MomentumElement::exp(1) * &p1).scale_int(-1));
        assert_eq!(p1.antipode().antipode(), p1);
        let e = &p0.pow(2) + &MomentumElement::scalar(ScalarValue::from_int(3));
        assert_eq!(e.counit(), ScalarValue::from_int(3));
    }

    #[test]
    fn f_identities_hold() {
        for o in verify_f_identities() {
            assert!(o.passed(), "{} [{}]: {}", o.id, o.tag, o.residual);
        }
    }

    #[test]
    fn box_identities_hold() {
        for o in verify_box_identities() {
            assert!(o.passed(), "{}: {}", o.id, o.residual);
        }
    }

    #[test]
    fn orthogonality_examples() {
        let f = &constants().f;
        let mut s00 = MomentumElement::zero();
        let mut s01 = MomentumElement::zero();
        for k in 0..DIM {
            s00 = &s00 + &(&f.low(k, 0) * f.up(k, 0));
            s01 = &s01 + &(&f.low(k, 0) * f.up(k, 1));
        }
        assert_eq!(s00, MomentumElement::one());
        assert!(s01.is_zero());
    }
}
