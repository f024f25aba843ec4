//! Independent truncated-series computations used to cross-check the
//! closed-form plane-wave rules.

use crate::action::act;
use crate::minkowski::{PlaneWave, PositionElement};
use crate::momentum::MomentumElement;
use crate::report::Outcome;
use crate::scalar::ScalarValue;
use crate::tensor::Tensor;

const TAG: &str = "derived-convention";

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// Drops every coefficient term of total `k` degree above `order`.
pub fn truncate(a: &PositionElement, order: u32) -> PositionElement {
    a.map_coefficients(|c| c.truncate_k_degree(order))
}

fn exp_series(generator: &PositionElement, order: u32) -> PositionElement {
    let mut out = PositionElement::one();
    let mut power = PositionElement::one();
    for n in 1..=order {
        power = truncate(&power.normal_mul(generator), order);
        out = &out + &power.scale(&ScalarValue::from_ratio(1, factorial(n)));
    }
    out
}

/// `exp(i s.x) exp(i K x^0)` expanded to total momentum degree `order`,
/// with every `E[j]` replaced by its exponential series.
pub fn wave_series(w: &PlaneWave, order: u32) -> PositionElement {
    let i = ScalarValue::i();
    let mut spatial = PositionElement::zero();
    for m in 0..3 {
        let s = w.spatial[m].kappa_expand(order).truncate_k_degree(order);
        spatial = &spatial + &PositionElement::x(m + 1).scale(&(&i * &s));
    }
    let time = PositionElement::x(0).scale(&(&i * &w.time_scalar()));
    truncate(&exp_series(&spatial, order).normal_mul(&exp_series(&time, order)), order)
}

fn truncate_tensor(t: &Tensor<PositionElement>, order: u32) -> Tensor<PositionElement> {
    let mut out = Tensor::zero(t.rank());
    for (legs, c) in t.terms() {
        out.add_term(legs.clone(), c.truncate_k_degree(order));
    }
    out
}

/// Series of `W(k) W(q)` against the series of the composed wave.
pub fn product_law_residual(k: &PlaneWave, q: &PlaneWave, order: u32) -> PositionElement {
    let lhs = truncate(&wave_series(k, order).normal_mul(&wave_series(q, order)), order);
    &lhs - &wave_series(&k.compose(q), order)
}

/// `Δ(series(W)) - series(W) ⊗ series(W)`, truncated.
pub fn coproduct_series_residual(w: &PlaneWave, order: u32) -> Tensor<PositionElement> {
    let s = wave_series(w, order);
    let lhs = truncate_tensor(&s.coproduct(), order);
    let rhs = truncate_tensor(&Tensor::product_of(&[s.clone(), s]), order);
    lhs.sub(&rhs)
}

fn render_tensor(t: &Tensor<PositionElement>) -> String {
    if t.is_zero() {
        "0".into()
    } else {
        format!("{} nonzero terms", t.terms().count())
    }
}

pub fn verify_plane_waves() -> Vec<Outcome> {
    let w1 = PlaneWave::label(1);
    let w2 = PlaneWave::label(2);
    let w12 = w1.compose(&w2);
    let mut out = vec![
        Outcome::zero_check("wave-product-series[W1,W2]", TAG, product_law_residual(&w1, &w2, 4)),
        Outcome::zero_check("wave-product-series[W2,W1]", TAG, product_law_residual(&w2, &w1, 4)),
        Outcome::zero_check("wave-coproduct-series[W1]", TAG, render_tensor(&coproduct_series_residual(&w1, 3))),
    ];
    for (label, w) in [("W1", &w1), ("W1W2", &w12)] {
        let u = PositionElement::wave(w.clone());
        let one = PositionElement::one();
        out.push(Outcome::zero_check(format!("wave-unitary[{label}]"), TAG, &u.normal_mul(&u.star()) - &one));
        out.push(Outcome::zero_check(format!("wave-unitary-left[{label}]"), TAG, &u.star().normal_mul(&u) - &one));
        for mu in 0..4 {
            let eigen = if mu == 0 { w.time_scalar() } else { w.spatial[mu - 1].clone() };
            let residual = &act(&MomentumElement::p(mu), &u) - &u.scale(&eigen);
            out.push(Outcome::zero_check(format!("wave-eigenvalue[P{mu},{label}]"), TAG, residual));
        }
        let residual = &act(&MomentumElement::exp(1), &u) - &u.scale(&w.exp_time(1));
        out.push(Outcome::zero_check(format!("wave-eigenvalue[Exp1,{label}]"), TAG, residual));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_wave_sector() {
        for o in verify_plane_waves() {
            assert!(o.passed(), "{}: {}", o.id, o.residual);
        }
    }

    #[test]
    fn series_starts_with_one_plus_linear() {
        let s = wave_series(&PlaneWave::label(1), 1);
        let i = ScalarValue::i();
        let mut expected = PositionElement::one();
        for mu in 0..4 {
            expected = &expected + &PositionElement::x(mu).scale(&(&i * &ScalarValue::k(1, mu as u8)));
        }
        assert_eq!(s, expected);
    }

    #[test]
    fn wrong_composition_is_detected() {
        let w1 = PlaneWave::label(1);
        let w2 = PlaneWave::label(2);
        let naive = PlaneWave {
            time: w1.compose(&w2).time,
            spatial: std::array::from_fn(|m| &w1.spatial[m] + &w2.spatial[m]),
        };
        let lhs = truncate(&wave_series(&w1, 2).normal_mul(&wave_series(&w2, 2)), 2);
        assert_ne!(lhs, wave_series(&naive, 2));
    }
}
