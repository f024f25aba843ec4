//! The five-dimensional bicovariant first-order calculus.
//!
//! One-forms are stored with left coefficients `a_i τ^i`. Moving a function
//! through a basis form uses `τ^i b = (f^i_j ▷ b) τ^j`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::action::{act, act_derivative, act_f};
use crate::metric::{g, DIM};
use crate::minkowski::{render_sum, PositionElement};
use crate::momentum::constants;
use crate::report::{Outcome, Status};
use crate::scalar::ScalarValue;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneForm {
    pub comp: [PositionElement; DIM],
}

impl OneForm {
    pub fn zero() -> Self {
        OneForm::default()
    }

    /// `τ^i`
    pub fn basis(i: usize) -> Self {
        let mut out = OneForm::zero();
        out.comp[i] = PositionElement::one();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(PositionElement::is_zero)
    }

    pub fn scale(&self, s: &ScalarValue) -> OneForm {
        OneForm { comp: std::array::from_fn(|i| self.comp[i].scale(s)) }
    }

    /// `a ω`
    pub fn left_mul(&self, a: &PositionElement) -> OneForm {
        OneForm { comp: std::array::from_fn(|i| a.normal_mul(&self.comp[i])) }
    }

    /// `ω b = a_i (f^i_j ▷ b) τ^j`
    pub fn right_mul(&self, b: &PositionElement) -> OneForm {
        let mut out = OneForm::zero();
        for i in 0..DIM {
            if self.comp[i].is_zero() {
                continue;
            }
            for j in 0..DIM {
                let moved = act_f(i, j, b);
                if !moved.is_zero() {
                    out.comp[j] = &out.comp[j] + &self.comp[i].normal_mul(&moved);
                }
            }
        }
        out
    }

    /// `(a_i τ^i)* = τ^i a_i* = (f^i_j ▷ a_i*) τ^j`
    pub fn star(&self) -> OneForm {
        let mut out = OneForm::zero();
        for i in 0..DIM {
            if self.comp[i].is_zero() {
                continue;
            }
            out = &out + &OneForm::basis(i).right_mul(&self.comp[i].star());
        }
        out
    }

    /// `ω_i = g_ii ω^i`; applying twice is the identity.
    pub fn lower(&self) -> OneForm {
        OneForm { comp: std::array::from_fn(|i| self.comp[i].scale(&ScalarValue::from_int(g(i)))) }
    }
}

impl Add for &OneForm {
    type Output = OneForm;
    fn add(self, rhs: &OneForm) -> OneForm {
        OneForm { comp: std::array::from_fn(|i| &self.comp[i] + &rhs.comp[i]) }
    }
}

impl Sub for &OneForm {
    type Output = OneForm;
    fn sub(self, rhs: &OneForm) -> OneForm {
        OneForm { comp: std::array::from_fn(|i| &self.comp[i] - &rhs.comp[i]) }
    }
}

impl Neg for &OneForm {
    type Output = OneForm;
    fn neg(self) -> OneForm {
        self.scale(&ScalarValue::from_int(-1))
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_sum(
            f,
            self.comp.iter().enumerate().flat_map(|(i, a)| {
                a.terms().map(move |(k, c)| {
                    let mut factors = k.factors();
                    factors.push(format!("tau[{}]", i));
                    (factors, c)
                })
            }),
        )
    }
}

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < DIM);
    // row-major index into the strict upper triangle
    i * DIM - i * (i + 1) / 2 + (j - i - 1)
}

const PAIRS: usize = DIM * (DIM - 1) / 2;

/// Two-form `Σ_{i<j} c_ij τ^i∧τ^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoForm {
    comp: [PositionElement; PAIRS],
}

impl TwoForm {
    pub fn zero() -> Self {
        TwoForm::default()
    }

    /// `τ^i∧τ^j` (zero for `i == j`, sign flipped for `i > j`).
    pub fn basis(i: usize, j: usize) -> Self {
        let mut out = TwoForm::zero();
        out.add_basis(i, j, &PositionElement::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(PositionElement::is_zero)
    }

    /// Coefficient of `τ^i∧τ^j`, antisymmetric in `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> PositionElement {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.comp[pair_index(i, j)].clone(),
            Greater => -&self.comp[pair_index(j, i)],
            Equal => PositionElement::zero(),
        }
    }

    /// Adds `a τ^i∧τ^j`.
    pub fn add_basis(&mut self, i: usize, j: usize, a: &PositionElement) {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => {
                let slot = &mut self.comp[pair_index(i, j)];
                *slot = &*slot + a;
            }
            Greater => {
                let slot = &mut self.comp[pair_index(j, i)];
                *slot = &*slot - a;
            }
            Equal => {}
        }
    }

    pub fn scale(&self, s: &ScalarValue) -> TwoForm {
        TwoForm { comp: std::array::from_fn(|n| self.comp[n].scale(s)) }
    }

    pub fn left_mul(&self, a: &PositionElement) -> TwoForm {
        TwoForm { comp: std::array::from_fn(|n| a.normal_mul(&self.comp[n])) }
    }

    /// `Ω b`, moving `b` through both basis factors.
    pub fn right_mul(&self, b: &PositionElement) -> TwoForm {
        let mut out = TwoForm::zero();
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                let c = &self.comp[pair_index(i, j)];
                if c.is_zero() {
                    continue;
                }
                for l in 0..DIM {
                    let inner = act_f(j, l, b);
                    if inner.is_zero() {
                        continue;
                    }
                    for k in 0..DIM {
                        let outer = act_f(i, k, &inner);
                        if !outer.is_zero() {
                            out.add_basis(k, l, &c.normal_mul(&outer));
                        }
                    }
                }
            }
        }
        out
    }
}

impl Add for &TwoForm {
    type Output = TwoForm;
    fn add(self, rhs: &TwoForm) -> TwoForm {
        TwoForm { comp: std::array::from_fn(|n| &self.comp[n] + &rhs.comp[n]) }
    }
}

impl Sub for &TwoForm {
    type Output = TwoForm;
    fn sub(self, rhs: &TwoForm) -> TwoForm {
        TwoForm { comp: std::array::from_fn(|n| &self.comp[n] - &rhs.comp[n]) }
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows = Vec::new();
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                for (k, c) in self.comp[pair_index(i, j)].terms() {
                    let mut factors = k.factors();
                    factors.push(format!("wedge(tau[{}], tau[{}])", i, j));
                    rows.push((factors, c));
                }
            }
        }
        render_sum(f, rows.into_iter())
    }
}

/// `d a = (∂_i ▷ a) τ^i`
pub fn exterior_d(a: &PositionElement) -> OneForm {
    OneForm { comp: std::array::from_fn(|i| act_derivative(i, a)) }
}

/// `(a_i τ^i)∧(b_j τ^j) = a_i (f^i_k ▷ b_j) τ^k∧τ^j`
pub fn wedge(omega: &OneForm, eta: &OneForm) -> TwoForm {
    let mut out = TwoForm::zero();
    for i in 0..DIM {
        if omega.comp[i].is_zero() {
            continue;
        }
        for j in 0..DIM {
            if eta.comp[j].is_zero() {
                continue;
            }
            for k in 0..DIM {
                if k == j {
                    continue;
                }
                let moved = act_f(i, k, &eta.comp[j]);
                if !moved.is_zero() {
                    out.add_basis(k, j, &omega.comp[i].normal_mul(&moved));
                }
            }
        }
    }
    out
}

/// `d(a_i τ^i) = (∂_j ▷ a_i) τ^j∧τ^i`, using `dτ^i = 0`.
pub fn exterior_d2(omega: &OneForm) -> TwoForm {
    let mut out = TwoForm::zero();
    for i in 0..DIM {
        if omega.comp[i].is_zero() {
            continue;
        }
        for j in 0..DIM {
            if j != i {
                out.add_basis(j, i, &act_derivative(j, &omega.comp[i]));
            }
        }
    }
    out
}

pub fn star_form(omega: &OneForm) -> OneForm {
    omega.star()
}

/// `d(ab) - a db - (da) b`
pub fn leibniz_residual(a: &PositionElement, b: &PositionElement) -> OneForm {
    let lhs = exterior_d(&a.normal_mul(b));
    let rhs = &exterior_d(b).left_mul(a) + &exterior_d(a).right_mul(b);
    &lhs - &rhs
}

/// Element of `Γ ⊗ Γ` with left coefficients on `τ^k ⊗ τ^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormTensor {
    pub comp: [[PositionElement; DIM]; DIM],
}

impl FormTensor {
    /// `s² = τ_mu ⊗ τ^mu - τ^4 ⊗ τ^4`, i.e. `diag(1, -1, -1, -1, -1)`.
    pub fn metric() -> Self {
        let mut out = FormTensor::default();
        for i in 0..DIM {
            out.comp[i][i] = PositionElement::scalar(ScalarValue::from_int(g(i)));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().flatten().all(PositionElement::is_zero)
    }

    pub fn left_mul(&self, a: &PositionElement) -> FormTensor {
        FormTensor { comp: std::array::from_fn(|k| std::array::from_fn(|j| a.normal_mul(&self.comp[k][j]))) }
    }

    /// `(c τ^k ⊗ τ^j) b = c (f^k_m ▷ (f^j_l ▷ b)) τ^m ⊗ τ^l`
    pub fn right_mul(&self, b: &PositionElement) -> FormTensor {
        let mut out = FormTensor::default();
        for k in 0..DIM {
            for j in 0..DIM {
                let c = &self.comp[k][j];
                if c.is_zero() {
                    continue;
                }
                for l in 0..DIM {
                    let inner = act_f(j, l, b);
                    if inner.is_zero() {
                        continue;
                    }
                    for m in 0..DIM {
                        let outer = act_f(k, m, &inner);
                        if !outer.is_zero() {
                            out.comp[m][l] = &out.comp[m][l] + &c.normal_mul(&outer);
                        }
                    }
                }
            }
        }
        out
    }
}

/// `s² a - a s²`, rendered component by component.
pub fn check_metric_centrality(a: &PositionElement) -> Outcome {
    let s2 = FormTensor::metric();
    let lhs = s2.right_mul(a);
    let rhs = s2.left_mul(a);
    let mut residual = Vec::new();
    for k in 0..DIM {
        for j in 0..DIM {
            let d = &lhs.comp[k][j] - &rhs.comp[k][j];
            if !d.is_zero() {
                residual.push(format!("[{k},{j}]: {d}"));
            }
        }
    }
    let text = if residual.is_empty() { "0".to_string() } else { residual.join("; ") };
    Outcome::zero_check("metric-centrality", "1.18", text)
}

/// Evaluates `(i kappa/4)([τ^mu, x_mu] + c τ^0)` for the corrected
/// coefficient `c = 3i/kappa` (asserted to give `τ^4`) and the printed
/// coefficient `c = 3i/4` (residual reported only).
pub fn check_tau4_definition() -> Vec<Outcome> {
    let mut contraction = OneForm::zero();
    for mu in 0..4 {
        let x = PositionElement::x(mu);
        let comm = &OneForm::basis(mu).right_mul(&x) - &OneForm::basis(mu).left_mul(&x);
        contraction = &contraction + &comm.scale(&ScalarValue::from_int(g(mu)));
    }
    let ik = &ScalarValue::i() * &ScalarValue::kappa_pow(-1);
    let mut expected = OneForm::zero();
    expected.comp[0] = PositionElement::scalar(ik.scale(&crate::GaussianRational::from_int(-3)));
    expected.comp[4] = PositionElement::scalar(ik.scale(&crate::GaussianRational::from_int(-4)));
    let prefactor = (&ScalarValue::i() * &ScalarValue::kappa_pow(1)).scale(&crate::GaussianRational::from_ratio(1, 4));
    let evaluate = |c: ScalarValue| {
        let mut with_c = contraction.clone();
        with_c.comp[0] = &with_c.comp[0] + &PositionElement::scalar(c);
        with_c.scale(&prefactor)
    };
    let corrected = evaluate(ik.scale(&crate::GaussianRational::from_int(3)));
    let literal = evaluate(ScalarValue::i().scale(&crate::GaussianRational::from_ratio(3, 4)));
    let tau4 = OneForm::basis(4);
    vec![
        Outcome::zero_check("tau-contraction", "1.15", &contraction - &expected),
        Outcome::zero_check("tau4-corrected-coefficient", "1.14", &corrected - &tau4),
        Outcome::new(
            "tau4-printed-coefficient",
            "1.14",
            Status::Reported,
            format!("result - tau[4] = {}", &literal - &tau4),
        ),
    ]
}

/// `[τ^mu, x^nu] = (i/kappa)(g^{0mu} τ^nu - g^{mu nu}(τ^0 + τ^4))` and
/// `[τ^4, x^mu] = -(i/kappa) τ^mu`.
pub fn verify_form_relations() -> Vec<Outcome> {
    let ik = &ScalarValue::i() * &ScalarValue::kappa_pow(-1);
    let mut out = Vec::new();
    for mu in 0..DIM {
        for nu in 0..4 {
            let x = PositionElement::x(nu);
            let lhs = &OneForm::basis(mu).right_mul(&x) - &OneForm::basis(mu).left_mul(&x);
            let rhs = if mu == 4 {
                OneForm::basis(nu).scale(&-&ik)
            } else {
                let g0 = crate::metric::g2(0, mu);
                let gm = crate::metric::g2(mu, nu);
                let mut r = OneForm::basis(nu).scale(&ScalarValue::from_int(g0));
                r = &r - &(&OneForm::basis(0) + &OneForm::basis(4)).scale(&ScalarValue::from_int(gm));
                r.scale(&ik)
            };
            out.push(Outcome::zero_check(format!("form-commutator[tau{mu},x{nu}]"), "1.15", &lhs - &rhs));
        }
    }
    out
}

/// `f_j^i ▷ a`
pub fn act_f_lowered(j: usize, i: usize, a: &PositionElement) -> PositionElement {
    act(&constants().f.low(j, i), a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(mu: usize) -> PositionElement {
        PositionElement::x(mu)
    }

    fn ik() -> ScalarValue {
        &ScalarValue::i() * &ScalarValue::kappa_pow(-1)
    }

    #[test]
    fn right_multiplication_examples() {
        let got = OneForm::basis(0).right_mul(&x(0));
        let expected = &OneForm::basis(0).left_mul(&x(0)) - &OneForm::basis(4).scale(&ik());
        assert_eq!(got, expected);
        assert_eq!(OneForm::basis(1).right_mul(&x(2)), OneForm::basis(1).left_mul(&x(2)));
        let got = OneForm::basis(4).right_mul(&x(1));
        let expected = &OneForm::basis(4).left_mul(&x(1)) - &OneForm::basis(1).scale(&ik());
        assert_eq!(got, expected);
    }

    #[test]
    fn form_relations() {
        for o in verify_form_relations() {
            assert!(o.passed(), "{}: {}", o.id, o.residual);
        }
    }

    #[test]
    fn exterior_derivative_examples() {
        for mu in 0..4 {
            assert_eq!(exterior_d(&x(mu)), OneForm::basis(mu));
        }
        assert!(exterior_d(&PositionElement::one()).is_zero());
        let got = exterior_d(&x(0).pow(2));
        let expected = &OneForm::basis(0).left_mul(&x(0).scale(&ScalarValue::from_int(2))) - &OneForm::basis(4).scale(&ik());
        assert_eq!(got, expected);
        // oracle: x0 dx0 + dx0 x0
        let oracle = &OneForm::basis(0).left_mul(&x(0)) + &OneForm::basis(0).right_mul(&x(0));
        assert_eq!(got, oracle);
    }

    #[test]
    fn wedge_examples() {
        assert!(wedge(&OneForm::basis(0), &OneForm::basis(0)).is_zero());
        assert_eq!(exterior_d2(&OneForm::basis(2).left_mul(&x(1))), TwoForm::basis(1, 2));
        let w = wedge(&OneForm::basis(0).left_mul(&x(0)), &OneForm::basis(1));
        assert_eq!(w, TwoForm::basis(0, 1).left_mul(&x(0)));
        assert_eq!(TwoForm::basis(3, 1).get(1, 3), PositionElement::scalar(ScalarValue::from_int(-1)));
    }

    #[test]
    fn star_examples() {
        assert_eq!(OneForm::basis(0).star(), OneForm::basis(0));
        assert_eq!(OneForm::basis(1).scale(&ScalarValue::i()).star(), OneForm::basis(1).scale(&-ScalarValue::i()));
        let got = OneForm::basis(0).left_mul(&x(0)).star();
        let expected = &OneForm::basis(0).left_mul(&x(0)) - &OneForm::basis(4).scale(&ik());
        assert_eq!(got, expected);
    }

    #[test]
    fn tau4_report() {
        let r = check_tau4_definition();
        assert!(r[0].passed(), "{}", r[0].residual);
        assert!(r[1].passed(), "{}", r[1].residual);
        assert_eq!(r[2].status, Status::Reported);
        assert!(r[2].residual.contains("tau[0]"), "{}", r[2].residual);
    }

    #[test]
    fn metric_is_central_on_examples() {
        for a in [PositionElement::one(), x(0), &x(1) * &x(0)] {
            let o = check_metric_centrality(&a);
            assert!(o.passed(), "{}", o.residual);
        }
    }

    #[test]
    fn d_squared_and_leibniz() {
        let w = PositionElement::label_wave(1);
        let samples = [x(0).pow(3), &x(1) * &x(0), &(&w * &x(2)) * &x(0), w.clone()];
        for a in &samples {
            assert!(exterior_d2(&exterior_d(a)).is_zero(), "d^2 {}", a);
            for b in &samples {
                assert!(leibniz_residual(a, b).is_zero(), "leibniz {} {}", a, b);
            }
        }
    }

    #[test]
    fn double_star_on_forms() {
        let w = PositionElement::label_wave(2);
        let omega = &OneForm::basis(0).left_mul(&(&x(0) * &x(1))) + &OneForm::basis(3).left_mul(&w);
        assert_eq!(star_form(&star_form(&omega)), omega);
        let shifted = OneForm::basis(2).left_mul(&x(3)).right_mul(&x(0)).right_mul(&w);
        assert_eq!(shifted, OneForm::basis(2).left_mul(&x(3)).right_mul(&(&x(0) * &w)));
    }

    #[test]
    fn lowering_twice_is_identity() {
        let w = &OneForm::basis(4).left_mul(&x(2)) + &OneForm::basis(0);
        assert_eq!(w.lower().lower(), w);
    }
}
