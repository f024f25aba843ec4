//! Deformed U(1) gauge theory: potentials, field strength, gauge
//! transformations with unitary elements, covariant derivatives and the
//! quadratic invariants.

use std::fmt;
use std::sync::Arc;

use crate::action::{act, act_derivative, act_f};
use crate::error::{KminkError, Result};
use crate::forms::{exterior_d2, wedge, OneForm, TwoForm};
use crate::metric::{g, DIM};
use crate::minkowski::{PlaneWave, PosKey, PositionElement};
use crate::momentum::constants;
use crate::report::{Outcome, Status};
use crate::scalar::ScalarValue;

/// Which quadratic term enters the field strength.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// `F_ij = ∂_iA_j - ∂_jA_i + i A_k[f^k_i(A_j) - f^k_j(A_i)]`
    Literal,
    /// Quadratic term multiplied by the charge, matching `dω + g ω∧ω`.
    Charged,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeConfig {
    pub a: [PositionElement; DIM],
    pub charge: ScalarValue,
}

impl GaugeConfig {
    pub fn new(a: [PositionElement; DIM], charge: ScalarValue) -> Self {
        GaugeConfig { a, charge }
    }

    pub fn zero(charge: ScalarValue) -> Self {
        GaugeConfig { a: Default::default(), charge }
    }

    /// `ω = i A_k τ^k`
    pub fn connection(&self) -> OneForm {
        OneForm { comp: std::array::from_fn(|k| self.a[k].scale(&ScalarValue::i())) }
    }

    fn coupling(&self, conv: Convention) -> ScalarValue {
        match conv {
            Convention::Literal => ScalarValue::one(),
            Convention::Charged => self.charge.clone(),
        }
    }
}

impl fmt::Display for GaugeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "charge = {}", self.charge)?;
        for (k, a) in self.a.iter().enumerate() {
            writeln!(f, "A{} = {}", k, a)?;
        }
        Ok(())
    }
}

/// Antisymmetric `F_ij`, stored for `i < j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldStrength {
    pub comp: TwoForm,
}

impl FieldStrength {
    pub fn get(&self, i: usize, j: usize) -> PositionElement {
        self.comp.get(i, j)
    }

    /// `F^{ij} = g^ii g^jj F_ij`
    pub fn raised(&self, i: usize, j: usize) -> PositionElement {
        self.get(i, j).scale(&ScalarValue::from_int(g(i) * g(j)))
    }

    pub fn is_zero(&self) -> bool {
        self.comp.is_zero()
    }

    fn difference(&self, other: &FieldStrength) -> FieldStrength {
        FieldStrength { comp: &self.comp - &other.comp }
    }
}

impl fmt::Display for FieldStrength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                let c = self.get(i, j);
                if !c.is_zero() {
                    parts.push(format!("F[{},{}] = {}", i, j, c));
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}

/// Element `U` with `U U* = U* U = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryElement {
    u: PositionElement,
    adjoint: PositionElement,
}

impl UnitaryElement {
    pub fn new(u: PositionElement) -> Result<Self> {
        let adjoint = u.star();
        let left = u.normal_mul(&adjoint);
        let right = adjoint.normal_mul(&u);
        if !left.is_one() || !right.is_one() {
            return Err(KminkError::NotUnitary(format!("U U* = {}, U* U = {}", left, right)));
        }
        Ok(UnitaryElement { u, adjoint })
    }

    /// `W[j]`
    pub fn wave(j: u32) -> Self {
        UnitaryElement::new(PositionElement::label_wave(j)).expect("plane waves are unitary")
    }

    pub fn element(&self) -> &PositionElement {
        &self.u
    }

    pub fn adjoint(&self) -> &PositionElement {
        &self.adjoint
    }

    /// `U a U*`
    pub fn conjugate(&self, a: &PositionElement) -> PositionElement {
        self.u.normal_mul(a).normal_mul(&self.adjoint)
    }
}

impl fmt::Display for UnitaryElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.u)
    }
}

pub fn field_strength(cfg: &GaugeConfig, conv: Convention) -> FieldStrength {
    let coupling = &ScalarValue::i() * &cfg.coupling(conv);
    let mut out = TwoForm::zero();
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            let mut c = &act_derivative(i, &cfg.a[j]) - &act_derivative(j, &cfg.a[i]);
            let mut quad = PositionElement::zero();
            for (k, ak) in cfg.a.iter().enumerate() {
                if ak.is_zero() {
                    continue;
                }
                let inner = &act_f(k, i, &cfg.a[j]) - &act_f(k, j, &cfg.a[i]);
                if !inner.is_zero() {
                    quad = &quad + &ak.normal_mul(&inner);
                }
            }
            c = &c + &quad.scale(&coupling);
            out.add_basis(i, j, &c);
        }
    }
    FieldStrength { comp: out }
}

/// `Ω = dω + g ω∧ω`
pub fn curvature_form(cfg: &GaugeConfig) -> TwoForm {
    let omega = cfg.connection();
    let quad = wedge(&omega, &omega).scale(&cfg.charge);
    &exterior_d2(&omega) + &quad
}

/// Compares `Ω` with `Σ_{j<k} i F_jk τ^j∧τ^k` for both conventions.
pub fn check_curvature_routes(cfg: &GaugeConfig) -> Vec<Outcome> {
    let omega = curvature_form(cfg);
    let route = |conv| &omega - &field_strength(cfg, conv).comp.scale(&ScalarValue::i());
    let literal = route(Convention::Literal);
    let literal_outcome = if cfg.charge.is_one() {
        Outcome::zero_check("curvature-vs-printed-field-strength", "3.7", literal)
    } else {
        Outcome::new(
            "curvature-vs-printed-field-strength",
            "3.7",
            Status::Reported,
            format!("charge {}: {}", cfg.charge, literal),
        )
    };
    vec![
        Outcome::zero_check("curvature-vs-charged-field-strength", "derived-convention", route(Convention::Charged)),
        literal_outcome,
    ]
}

/// `Ã_k = U A_j f^j_k(U*) - (i/g) U ∂_k(U*)`
pub fn gauge_transform(cfg: &GaugeConfig, u: &UnitaryElement) -> Result<GaugeConfig> {
    let inv = cfg
        .charge
        .inverse()
        .ok_or_else(|| KminkError::NonInvertibleCharge(cfg.charge.to_string()))?;
    let shift = &(&ScalarValue::i() * &inv) * &ScalarValue::from_int(-1);
    let a = std::array::from_fn(|k| {
        let mut out = u.element().normal_mul(&act_derivative(k, u.adjoint())).scale(&shift);
        for (j, aj) in cfg.a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            let moved = act_f(j, k, u.adjoint());
            if !moved.is_zero() {
                out = &out + &u.element().normal_mul(aj).normal_mul(&moved);
            }
        }
        out
    });
    Ok(GaugeConfig { a, charge: cfg.charge.clone() })
}

/// `∇_k a = ∂_k(a) + i g A_j f^j_k(a)`
pub fn covariant_derivative(cfg: &GaugeConfig, k: usize, a: &PositionElement) -> PositionElement {
    let mut out = act_derivative(k, a);
    let coupling = &ScalarValue::i() * &cfg.charge;
    for (j, aj) in cfg.a.iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        let moved = act_f(j, k, a);
        if !moved.is_zero() {
            out = &out + &aj.normal_mul(&moved).scale(&coupling);
        }
    }
    out
}

pub fn covariant_derivative_spinor(
    cfg: &GaugeConfig,
    k: usize,
    psi: &crate::dirac::SpinorElement,
) -> crate::dirac::SpinorElement {
    crate::dirac::SpinorElement { comp: std::array::from_fn(|r| covariant_derivative(cfg, k, &psi.comp[r])) }
}

fn nabla_chain(cfg: &GaugeConfig, chain: &[usize], a: &PositionElement) -> PositionElement {
    chain.iter().rev().fold(a.clone(), |acc, &k| covariant_derivative(cfg, k, &acc))
}

/// `[∇_i, ∇_j] a - i g F_mn f^m_i(f^n_j(a))`, with the charged field strength.
pub fn nabla_commutator_residual(cfg: &GaugeConfig, i: usize, j: usize, a: &PositionElement) -> PositionElement {
    let lhs = &nabla_chain(cfg, &[i, j], a) - &nabla_chain(cfg, &[j, i], a);
    let f = field_strength(cfg, Convention::Charged);
    let coupling = &ScalarValue::i() * &cfg.charge;
    let mut rhs = PositionElement::zero();
    for n in 0..DIM {
        let inner = act_f(n, j, a);
        if inner.is_zero() {
            continue;
        }
        for m in 0..DIM {
            let fmn = f.get(m, n);
            if fmn.is_zero() {
                continue;
            }
            let outer = act_f(m, i, &inner);
            if !outer.is_zero() {
                rhs = &rhs + &fmn.normal_mul(&outer);
            }
        }
    }
    &lhs - &rhs.scale(&coupling)
}

/// Cyclic sum of `[∇_i, [∇_j, ∇_k]]` applied to `a`.
pub fn bianchi_residual(cfg: &GaugeConfig, i: usize, j: usize, k: usize, a: &PositionElement) -> PositionElement {
    let nested = |x: usize, y: usize, z: usize| {
        let mut s = nabla_chain(cfg, &[x, y, z], a);
        s = &s - &nabla_chain(cfg, &[x, z, y], a);
        s = &s - &nabla_chain(cfg, &[y, z, x], a);
        &s + &nabla_chain(cfg, &[z, y, x], a)
    };
    let s = &nested(i, j, k) + &nested(j, k, i);
    &s + &nested(k, i, j)
}

/// `f_m^j ▷ a`
fn act_f_low(m: usize, j: usize, a: &PositionElement) -> PositionElement {
    act(&constants().f.low(m, j), a)
}

/// `∇_m F^{mk} = ∂_m F^{mk} + i g (A_j f^j_m(F^{mk}) - F^{mn} f_m^j(f_n^k(A_j)))`
pub fn divergence(cfg: &GaugeConfig, conv: Convention) -> [PositionElement; DIM] {
    let f = field_strength(cfg, conv);
    let coupling = &ScalarValue::i() * &cfg.charge;
    std::array::from_fn(|k| {
        let mut lin = PositionElement::zero();
        let mut quad = PositionElement::zero();
        for m in 0..DIM {
            let fmk = f.raised(m, k);
            if !fmk.is_zero() {
                lin = &lin + &act_derivative(m, &fmk);
                for (j, aj) in cfg.a.iter().enumerate() {
                    if !aj.is_zero() {
                        quad = &quad + &aj.normal_mul(&act_f(j, m, &fmk));
                    }
                }
            }
            for n in 0..DIM {
                let fmn = f.raised(m, n);
                if fmn.is_zero() {
                    continue;
                }
                for (j, aj) in cfg.a.iter().enumerate() {
                    if aj.is_zero() {
                        continue;
                    }
                    let inner = act_f_low(n, k, aj);
                    if inner.is_zero() {
                        continue;
                    }
                    let outer = act_f_low(m, j, &inner);
                    if !outer.is_zero() {
                        quad = &quad - &fmn.normal_mul(&outer);
                    }
                }
            }
        }
        &lin + &quad.scale(&coupling)
    })
}

/// `C = F^{ij} F_ij*`, `C_+ = F_ij f^i_k(f^j_l(F^{kl}))`,
/// `C_- = f^i_k(f^j_l(F_ij*)) (F^{kl})*`.
pub fn invariants(cfg: &GaugeConfig, conv: Convention) -> [PositionElement; 3] {
    invariants_of(&field_strength(cfg, conv))
}

pub fn invariants_of(f: &FieldStrength) -> [PositionElement; 3] {
    let mut c = PositionElement::zero();
    let mut plus = PositionElement::zero();
    let mut minus = PositionElement::zero();
    let low: Vec<(usize, usize, PositionElement)> = pairs()
        .map(|(i, j)| (i, j, f.get(i, j)))
        .filter(|(_, _, x)| !x.is_zero())
        .collect();
    for (i, j, fij) in &low {
        let up = f.raised(*i, *j);
        c = &c + &up.normal_mul(&fij.star());
    }
    // f^i_k(f^j_l(X)) for every stored (k, l) and every target (i, j)
    for (k, l, fkl) in &low {
        let up_kl = f.raised(*k, *l);
        let fkl_star = fkl.star();
        for (i, j) in pairs() {
            let fij = f.get(i, j);
            let plus_moved = double_f(i, j, *k, *l, &up_kl);
            if !fij.is_zero() && !plus_moved.is_zero() {
                plus = &plus + &fij.normal_mul(&plus_moved);
            }
            // C_- with the roles of (i, j) and (k, l) exchanged in the sum
            let minus_moved = double_f(*k, *l, i, j, &fkl_star);
            let up_ij_star = f.raised(i, j).star();
            if !minus_moved.is_zero() && !up_ij_star.is_zero() {
                minus = &minus + &minus_moved.normal_mul(&up_ij_star);
            }
        }
    }
    [c, plus, minus]
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..DIM).flat_map(|i| (0..DIM).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// `f^i_k(f^j_l(x))`
fn double_f(i: usize, j: usize, k: usize, l: usize, x: &PositionElement) -> PositionElement {
    let inner = act_f(j, l, x);
    if inner.is_zero() {
        return inner;
    }
    act_f(i, k, &inner)
}

/// `F̃_ij - U F_kl f^k_i(f^l_j(U*))`
pub fn check_f_covariance(cfg: &GaugeConfig, u: &UnitaryElement, conv: Convention, label: &str) -> Outcome {
    let id = format!("F-covariance[{label}]");
    let transformed = match gauge_transform(cfg, u) {
        Ok(t) => t,
        Err(e) => return Outcome::new(id, "3.9", Status::Fail, e.to_string()),
    };
    let lhs = field_strength(&transformed, conv);
    let f = field_strength(cfg, conv);
    let moved: Vec<Vec<PositionElement>> =
        (0..DIM).map(|l| (0..DIM).map(|j| act_f(l, j, u.adjoint())).collect()).collect();
    let mut rhs = TwoForm::zero();
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            let mut s = PositionElement::zero();
            for (k, l) in pairs() {
                let fkl = f.get(k, l);
                if fkl.is_zero() || moved[l][j].is_zero() {
                    continue;
                }
                let outer = act_f(k, i, &moved[l][j]);
                if !outer.is_zero() {
                    s = &s + &fkl.normal_mul(&outer);
                }
            }
            rhs.add_basis(i, j, &u.element().normal_mul(&s));
        }
    }
    Outcome::zero_check(id, "3.9", lhs.difference(&FieldStrength { comp: rhs }))
}

fn render_components(parts: &[PositionElement]) -> String {
    let rows: Vec<String> = parts
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| format!("[{}]: {}", k, p))
        .collect();
    if rows.is_empty() {
        "0".to_string()
    } else {
        rows.join("; ")
    }
}

/// `∇̃_m F̃^{mk} - U (∇_m F^{mn}) f_n^k(U*)`
pub fn check_divergence_covariance(cfg: &GaugeConfig, u: &UnitaryElement, conv: Convention, label: &str) -> Outcome {
    let id = format!("divergence-covariance[{label}]");
    let transformed = match gauge_transform(cfg, u) {
        Ok(t) => t,
        Err(e) => return Outcome::new(id, "3.13", Status::Fail, e.to_string()),
    };
    let lhs = divergence(&transformed, conv);
    let div = divergence(cfg, conv);
    let residual: Vec<PositionElement> = (0..DIM)
        .map(|k| {
            let mut rhs = PositionElement::zero();
            for (n, dn) in div.iter().enumerate() {
                if dn.is_zero() {
                    continue;
                }
                let moved = act_f_low(n, k, u.adjoint());
                if !moved.is_zero() {
                    rhs = &rhs + &u.element().normal_mul(dn).normal_mul(&moved);
                }
            }
            &lhs[k] - &rhs
        })
        .collect();
    Outcome::zero_check(id, "3.13", render_components(&residual))
}

/// `C̃ - U C U*` and the same for `C_±`, plus `C_- - star(C_+)`.
pub fn check_invariant_covariance(cfg: &GaugeConfig, u: &UnitaryElement, conv: Convention, label: &str) -> Vec<Outcome> {
    let names = ["C", "C+", "C-"];
    let before = invariants(cfg, conv);
    let transformed = match gauge_transform(cfg, u) {
        Ok(t) => t,
        Err(e) => {
            return names
                .iter()
                .map(|n| Outcome::new(format!("{n}-covariance[{label}]"), "3.16", Status::Fail, e.to_string()))
                .collect()
        }
    };
    let after = invariants(&transformed, conv);
    let mut out: Vec<Outcome> = names
        .iter()
        .zip(before.iter().zip(after.iter()))
        .map(|(n, (b, a))| Outcome::zero_check(format!("{n}-covariance[{label}]"), "3.16", a - &u.conjugate(b)))
        .collect();
    out.push(Outcome::zero_check(format!("C-minus-is-star-of-C-plus[{label}]"), "3.20", &before[2] - &before[1].star()));
    out
}

/// `Σ f^i_k(f^j_l(U*)) f^k_u(f^l_v(U)) - δ^i_u δ^j_v`
pub fn collapse_residual(u: &UnitaryElement, i: usize, j: usize, p: usize, q: usize) -> PositionElement {
    let mut s = PositionElement::zero();
    for k in 0..DIM {
        for l in 0..DIM {
            let left = double_f(i, j, k, l, u.adjoint());
            if left.is_zero() {
                continue;
            }
            let right = double_f(k, l, p, q, u.element());
            if !right.is_zero() {
                s = &s + &left.normal_mul(&right);
            }
        }
    }
    if i == p && j == q {
        s = &s - &PositionElement::one();
    }
    s
}

fn classical_mul(a: &PositionElement, b: &PositionElement) -> PositionElement {
    let mut out = PositionElement::zero();
    for (ka, ca) in a.terms() {
        for (kb, cb) in b.terms() {
            let key = PosKey {
                x: std::array::from_fn(|m| ka.x[m] + kb.x[m]),
                t: ka.t + kb.t,
                wave: Arc::new(PlaneWave::identity()),
            };
            out = &out + &PositionElement::from_key(key, ca * cb);
        }
    }
    out
}

/// Commutative partial derivative; `∂_4` is zero.
fn classical_d(mu: usize, a: &PositionElement) -> PositionElement {
    let mut out = PositionElement::zero();
    if mu >= 4 {
        return out;
    }
    for (k, c) in a.terms() {
        let mut key = k.clone();
        let n = if mu == 0 { &mut key.t } else { &mut key.x[mu - 1] };
        if *n == 0 {
            continue;
        }
        let factor = ScalarValue::from_int(*n as i64);
        *n -= 1;
        out = &out + &PositionElement::from_key(key, c * &factor);
    }
    out
}

/// `-F_{mu nu}F^{mu nu}/4 + ∂_mu A_4 ∂^mu A_4 / 2` computed commutatively.
pub fn classical_lagrangian(cfg: &GaugeConfig) -> PositionElement {
    let mut l = PositionElement::zero();
    let quarter = ScalarValue::from_ratio(-1, 4);
    for mu in 0..4 {
        for nu in 0..4 {
            let f = &classical_d(mu, &cfg.a[nu]) - &classical_d(nu, &cfg.a[mu]);
            let sq = classical_mul(&f, &f).scale(&ScalarValue::from_int(g(mu) * g(nu)));
            l = &l + &sq.scale(&quarter);
        }
        let d4 = classical_d(mu, &cfg.a[4]);
        l = &l + &classical_mul(&d4, &d4).scale(&ScalarValue::from_ratio(g(mu), 2));
    }
    l
}

/// Order-zero large-kappa part of `-C/4`.
pub fn deformed_lagrangian_limit(cfg: &GaugeConfig) -> PositionElement {
    let [c, _, _] = invariants(cfg, Convention::Literal);
    c.scale(&ScalarValue::from_ratio(-1, 4)).kappa_expand(0)
}

pub fn classical_limit(cfg: &GaugeConfig, label: &str) -> Result<Outcome> {
    if cfg.a.iter().any(PositionElement::has_waves) {
        return Err(KminkError::Type("classical limit needs polynomial potentials".into()));
    }
    let deformed = deformed_lagrangian_limit(cfg);
    let classical = classical_lagrangian(cfg);
    Ok(Outcome::zero_check(format!("classical-limit[{label}]"), "3.25", &deformed - &classical))
}

fn config(entries: &[(usize, PositionElement)]) -> GaugeConfig {
    let mut cfg = GaugeConfig::zero(ScalarValue::one());
    for (k, a) in entries {
        cfg.a[*k] = a.clone();
    }
    cfg
}

/// Degree-one fixtures with unit charge.
pub fn covariance_fixtures() -> Vec<(String, GaugeConfig)> {
    let x = PositionElement::x;
    let half = |a: PositionElement| a.scale(&ScalarValue::from_ratio(1, 2));
    vec![
        ("A1=x0".to_string(), config(&[(1, x(0))])),
        ("A0=x1,A2=x0".to_string(), config(&[(0, x(1)), (2, x(0))])),
        (
            "A3=x2+1/2,A4=x1".to_string(),
            config(&[(3, &x(2) + &half(PositionElement::one())), (4, x(1))]),
        ),
    ]
}

pub fn unitary_fixtures() -> Vec<(String, UnitaryElement)> {
    let w12 = PositionElement::label_wave(1).normal_mul(&PositionElement::label_wave(2));
    vec![
        ("W[1]".to_string(), UnitaryElement::wave(1)),
        ("W[1]W[2]".to_string(), UnitaryElement::new(w12).expect("product of waves is unitary")),
    ]
}

pub fn limit_fixtures() -> Vec<(String, GaugeConfig)> {
    let x = PositionElement::x;
    vec![
        ("A=0".to_string(), GaugeConfig::zero(ScalarValue::one())),
        ("A1=x0".to_string(), config(&[(1, x(0))])),
        ("A4=x1".to_string(), config(&[(4, x(1))])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(mu: usize) -> PositionElement {
        PositionElement::x(mu)
    }

    fn sc(n: i64) -> PositionElement {
        PositionElement::scalar(ScalarValue::from_int(n))
    }

    #[test]
    fn field_strength_examples() {
        let cfg = config(&[(1, x(0))]);
        let f = field_strength(&cfg, Convention::Literal);
        let mut expected = TwoForm::zero();
        expected.add_basis(0, 1, &PositionElement::one());
        assert_eq!(f.comp, expected, "{}", f);
        assert!(field_strength(&GaugeConfig::zero(ScalarValue::one()), Convention::Literal).is_zero());
        let constant = config(&[(0, sc(2)), (3, sc(-1)), (4, sc(5))]);
        assert!(field_strength(&constant, Convention::Literal).is_zero());
    }

    #[test]
    fn curvature_routes() {
        for (_, cfg) in covariance_fixtures() {
            for o in check_curvature_routes(&cfg) {
                assert_eq!(o.status, Status::Pass, "{}: {}", o.id, o.residual);
            }
        }
        let mut cfg = config(&[(0, x(1)), (2, x(0))]);
        cfg.charge = ScalarValue::from_int(2);
        let r = check_curvature_routes(&cfg);
        assert_eq!(r[0].status, Status::Pass);
        assert_eq!(r[1].status, Status::Reported);
        assert!(curvature_form(&GaugeConfig::zero(ScalarValue::one())).is_zero());
    }

    #[test]
    fn unitarity_is_enforced() {
        assert!(UnitaryElement::new(x(0)).is_err());
        assert!(UnitaryElement::new(PositionElement::one()).is_ok());
        let u = UnitaryElement::wave(3);
        assert!(u.conjugate(&PositionElement::one()).is_one());
    }

    #[test]
    fn transform_by_identity_and_pure_gauge() {
        let one = UnitaryElement::new(PositionElement::one()).unwrap();
        for (_, cfg) in covariance_fixtures() {
            assert_eq!(gauge_transform(&cfg, &one).unwrap(), cfg);
        }
        for charge in [ScalarValue::one(), ScalarValue::from_int(2)] {
            for (_, u) in unitary_fixtures() {
                let pure = gauge_transform(&GaugeConfig::zero(charge.clone()), &u).unwrap();
                assert!(field_strength(&pure, Convention::Charged).is_zero());
            }
        }
        let zero_charge = GaugeConfig::zero(ScalarValue::zero());
        assert!(gauge_transform(&zero_charge, &UnitaryElement::wave(1)).is_err());
    }

    #[test]
    fn covariance_single_fixture() {
        let (_, cfg) = &covariance_fixtures()[0];
        let u = UnitaryElement::wave(1);
        let o = check_f_covariance(cfg, &u, Convention::Literal, "t");
        assert!(o.passed(), "{}", o.residual);
        let o = check_divergence_covariance(cfg, &u, Convention::Literal, "t");
        assert!(o.passed(), "{}", o.residual);
        for o in check_invariant_covariance(cfg, &u, Convention::Literal, "t") {
            assert!(o.passed(), "{}: {}", o.id, o.residual);
        }
    }

    #[test]
    fn charged_convention_is_covariant_for_other_charges() {
        let (_, mut cfg) = covariance_fixtures()[1].clone();
        cfg.charge = ScalarValue::from_int(2);
        let o = check_f_covariance(&cfg, &UnitaryElement::wave(1), Convention::Charged, "g=2");
        assert!(o.passed(), "{}", o.residual);
    }

    #[test]
    fn nabla_commutator_and_bianchi() {
        let (_, cfg) = &covariance_fixtures()[2];
        let a = &x(1) * &x(0);
        for i in 0..DIM {
            for j in 0..DIM {
                assert!(nabla_commutator_residual(cfg, i, j, &a).is_zero(), "{i}{j}");
            }
        }
        assert!(bianchi_residual(cfg, 0, 1, 4, &a).is_zero());
        let zero = GaugeConfig::zero(ScalarValue::one());
        assert_eq!(covariant_derivative(&zero, 2, &a), act_derivative(2, &a));
    }

    #[test]
    fn invariant_values() {
        let [c, plus, minus] = invariants(&config(&[(1, x(0))]), Convention::Literal);
        assert_eq!(c, sc(-2));
        assert_eq!(minus, plus.star());
        let [c, plus, minus] = invariants(&GaugeConfig::zero(ScalarValue::one()), Convention::Literal);
        assert!(c.is_zero() && plus.is_zero() && minus.is_zero());
    }

    #[test]
    fn classical_limits() {
        let expected = [
            PositionElement::zero(),
            PositionElement::scalar(ScalarValue::from_ratio(1, 2)),
            PositionElement::scalar(ScalarValue::from_ratio(-1, 2)),
        ];
        for ((label, cfg), e) in limit_fixtures().iter().zip(expected) {
            assert_eq!(deformed_lagrangian_limit(cfg), e, "{label}");
            assert!(classical_limit(cfg, label).unwrap().passed());
        }
    }

    #[test]
    fn collapse_for_waves() {
        let u = UnitaryElement::wave(1);
        for (i, j, p, q) in [(0, 1, 0, 1), (0, 4, 4, 0), (2, 3, 2, 3), (4, 4, 0, 0)] {
            assert!(collapse_residual(&u, i, j, p, q).is_zero());
        }
    }
}
