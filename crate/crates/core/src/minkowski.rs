//! The coordinate algebra with `[x^0, x^m] = (i/kappa) x^m` and commuting
//! spatial coordinates, extended by ordered plane waves.
//!
//! Every element is kept in normal order: spatial monomial, then a power of
//! `x^0`, then a plane wave `W = exp(i s.x) exp(i K x^0)`. The product is
//! computed by right-multiplying with single letters (`x^m`, `x^0`, `W`),
//! each of which has a closed-form reordering rule.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::binomial;

use crate::scalar::{power, split_sign, term_body, GaussianRational, ScalarValue};
use crate::tensor::{BasisAlgebra, Tensor};

/// `exp(i spatial.x) exp(i time x^0)` with the spatial factor to the left.
///
/// `time` is an integer combination of the base symbols `k[j,0]` (sorted by
/// label, no zero entries), so `exp(time/kappa)` is a Laurent monomial in the
/// `E[j]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneWave {
    pub time: Vec<(u32, i64)>,
    pub spatial: [ScalarValue; 3],
}

impl PlaneWave {
    pub fn identity() -> Self {
        PlaneWave::default()
    }

    /// The wave `W[j]` with momentum `(k[j,0]; k[j,1], k[j,2], k[j,3])`.
    pub fn label(j: u32) -> Self {
        PlaneWave {
            time: vec![(j, 1)],
            spatial: [ScalarValue::k(j, 1), ScalarValue::k(j, 2), ScalarValue::k(j, 3)],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.time.is_empty() && self.spatial.iter().all(ScalarValue::is_zero)
    }

    /// `Some(j)` when this is exactly `W[j]`.
    pub fn as_label(&self) -> Option<u32> {
        match self.time.as_slice() {
            [(j, 1)] if *self == PlaneWave::label(*j) => Some(*j),
            _ => None,
        }
    }

    /// The time momentum as a scalar `sum c_j k[j,0]`.
    pub fn time_scalar(&self) -> ScalarValue {
        let mut out = ScalarValue::zero();
        for &(j, c) in &self.time {
            out += &ScalarValue::k(j, 0).scale(&GaussianRational::from_int(c));
        }
        out
    }

    /// `exp(p * time / kappa)` as a monomial in the `E[j]`.
    pub fn exp_time(&self, p: i64) -> ScalarValue {
        let mut out = ScalarValue::one();
        for &(j, c) in &self.time {
            out = &out * &ScalarValue::e_pow(j, (p * c) as i32);
        }
        out
    }

    /// `self * other`, using `exp(iK x^0) exp(iq.x) = exp(i e^{-K/kappa} q.x) exp(iK x^0)`.
    pub fn compose(&self, other: &PlaneWave) -> PlaneWave {
        let shrink = self.exp_time(-1);
        let spatial = std::array::from_fn(|m| &self.spatial[m] + &(&shrink * &other.spatial[m]));
        PlaneWave { time: add_time(&self.time, &other.time, 1), spatial }
    }

    /// Group inverse `(-e^{K/kappa} s, -K)`.
    pub fn inverse(&self) -> PlaneWave {
        let grow = self.exp_time(1);
        PlaneWave {
            time: add_time(&[], &self.time, -1),
            spatial: std::array::from_fn(|m| -&(&grow * &self.spatial[m])),
        }
    }

    /// Hermitian conjugate: reversed factors with conjugated momenta.
    pub fn star(&self) -> PlaneWave {
        let grow = self.exp_time(1);
        PlaneWave {
            time: add_time(&[], &self.time, -1),
            spatial: std::array::from_fn(|m| -&(&grow * &self.spatial[m].conj())),
        }
    }
}

fn add_time(a: &[(u32, i64)], b: &[(u32, i64)], sign: i64) -> Vec<(u32, i64)> {
    let mut map: BTreeMap<u32, i64> = a.iter().copied().collect();
    for &(j, c) in b {
        *map.entry(j).or_insert(0) += sign * c;
    }
    map.into_iter().filter(|(_, c)| *c != 0).collect()
}

impl fmt::Display for PlaneWave {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(j) = self.as_label() {
            return write!(f, "W[{}]", j);
        }
        write!(
            f,
            "wave({}; {}, {}, {})",
            self.time_scalar(),
            self.spatial[0],
            self.spatial[1],
            self.spatial[2]
        )
    }
}

/// Normal-ordered basis monomial `x1^a1 x2^a2 x3^a3 (x0)^t W`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PosKey {
    pub x: [u32; 3],
    pub t: u32,
    pub wave: Arc<PlaneWave>,
}

impl PosKey {
    pub fn unit() -> Self {
        PosKey { x: [0; 3], t: 0, wave: Arc::new(PlaneWave::identity()) }
    }

    pub fn degree(&self) -> u32 {
        self.x.iter().sum::<u32>() + self.t
    }

    pub(crate) fn factors(&self) -> Vec<String> {
        let mut out = Vec::new();
        for m in 0..3 {
            if self.x[m] > 0 {
                out.push(power(format!("x{}", m + 1), self.x[m] as i64));
            }
        }
        if self.t > 0 {
            out.push(power("x0".to_string(), self.t as i64));
        }
        if !self.wave.is_identity() {
            out.push(self.wave.to_string());
        }
        out
    }
}

/// Element of the coordinate algebra in normal order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositionElement {
    terms: BTreeMap<PosKey, ScalarValue>,
}

impl PositionElement {
    pub fn zero() -> Self {
        PositionElement::default()
    }

    pub fn one() -> Self {
        PositionElement::scalar(ScalarValue::one())
    }

    pub fn scalar(c: ScalarValue) -> Self {
        PositionElement::from_key(PosKey::unit(), c)
    }

    pub fn from_key(key: PosKey, c: ScalarValue) -> Self {
        let mut out = PositionElement::zero();
        out.add_term(key, c);
        out
    }

    /// Coordinate `x^mu`, `mu` in 0..=3.
    pub fn x(mu: usize) -> Self {
        assert!(mu < 4, "coordinate index out of range");
        let mut key = PosKey::unit();
        if mu == 0 {
            key.t = 1;
        } else {
            key.x[mu - 1] = 1;
        }
        PositionElement::from_key(key, ScalarValue::one())
    }

    pub fn wave(w: PlaneWave) -> Self {
        PositionElement::from_key(PosKey { wave: Arc::new(w), ..PosKey::unit() }, ScalarValue::one())
    }

    /// `W[j]`
    pub fn label_wave(j: u32) -> Self {
        PositionElement::wave(PlaneWave::label(j))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PosKey, &ScalarValue)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|s| s.is_one())
    }

    /// The scalar value if this element is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<ScalarValue> {
        match self.terms.len() {
            0 => Some(ScalarValue::zero()),
            1 => {
                let (k, c) = self.terms.iter().next()?;
                (*k == PosKey::unit()).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Largest polynomial degree among the terms.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(PosKey::degree).max().unwrap_or(0)
    }

    pub fn has_waves(&self) -> bool {
        self.terms.keys().any(|k| !k.wave.is_identity())
    }

    pub fn add_term(&mut self, key: PosKey, c: ScalarValue) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn add_assign(&mut self, other: &PositionElement) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scale(&self, s: &ScalarValue) -> PositionElement {
        let mut out = PositionElement::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&ScalarValue) -> ScalarValue) -> PositionElement {
        let mut out = PositionElement::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Right multiplication by `(x1)^y1 (x2)^y2 (x3)^y3`, using
    /// `f(x^0) x^m = x^m f(x^0 + i/kappa)` and
    /// `exp(iK x^0) x^m = e^{-K/kappa} x^m exp(iK x^0)`.
    fn mul_spatial(&self, y: [u32; 3]) -> PositionElement {
        let n = y.iter().sum::<u32>();
        if n == 0 {
            return self.clone();
        }
        let shift = &ScalarValue::i() * &ScalarValue::kappa_pow(-1);
        let shift = shift.scale(&GaussianRational::from_int(n as i64));
        let mut out = PositionElement::zero();
        for (k, c) in &self.terms {
            let c = c * &k.wave.exp_time(-(n as i64));
            let x = [k.x[0] + y[0], k.x[1] + y[1], k.x[2] + y[2]];
            for (t, b) in shifted_power(k.t, &shift) {
                out.add_term(PosKey { x, t, wave: k.wave.clone() }, &c * &b);
            }
        }
        out
    }

    /// Right multiplication by `x^0`, using `S x^0 = x^0 S + (1/kappa)(s.x) S`
    /// for the spatial exponential `S` and `[exp(iK x^0), x^0] = 0`.
    fn mul_x0(&self) -> PositionElement {
        let shift = &ScalarValue::i() * &ScalarValue::kappa_pow(-1);
        let inv_kappa = ScalarValue::kappa_pow(-1);
        let mut out = PositionElement::zero();
        for (k, c) in &self.terms {
            out.add_term(PosKey { t: k.t + 1, ..k.clone() }, c.clone());
            for m in 0..3 {
                let s = &k.wave.spatial[m];
                if s.is_zero() {
                    continue;
                }
                let cm = &(c * s) * &inv_kappa;
                let mut x = k.x;
                x[m] += 1;
                for (t, b) in shifted_power(k.t, &shift) {
                    out.add_term(PosKey { x, t, wave: k.wave.clone() }, &cm * &b);
                }
            }
        }
        out
    }

    fn mul_wave(&self, w: &Arc<PlaneWave>) -> PositionElement {
        if w.is_identity() {
            return self.clone();
        }
        let mut out = PositionElement::zero();
        for (k, c) in &self.terms {
            let wave = Arc::new(k.wave.compose(w));
            out.add_term(PosKey { wave, ..k.clone() }, c.clone());
        }
        out
    }

    /// Right multiplication by one basis monomial.
    pub(crate) fn mul_key(&self, key: &PosKey) -> PositionElement {
        let mut cur = self.mul_spatial(key.x);
        for _ in 0..key.t {
            cur = cur.mul_x0();
        }
        cur.mul_wave(&key.wave)
    }

    /// Product in normal order.
    pub fn normal_mul(&self, other: &PositionElement) -> PositionElement {
        let mut out = PositionElement::zero();
        for (k, c) in &other.terms {
            out.add_assign(&self.mul_key(k).scale(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> PositionElement {
        let mut acc = PositionElement::one();
        for _ in 0..n {
            acc = acc.normal_mul(self);
        }
        acc
    }

    pub fn commutator(&self, other: &PositionElement) -> PositionElement {
        &self.normal_mul(other) - &other.normal_mul(self)
    }

    /// Antilinear antihomomorphism fixing `x^mu`.
    pub fn star(&self) -> PositionElement {
        let mut out = PositionElement::zero();
        for (k, c) in &self.terms {
            let reversed = PositionElement::wave(k.wave.star())
                .normal_mul(&PositionElement::from_key(PosKey { t: k.t, ..PosKey::unit() }, ScalarValue::one()))
                .mul_spatial(k.x);
            out.add_assign(&reversed.scale(&c.conj()));
        }
        out
    }

    /// Counit: `x^mu -> 0`, plane waves are group-like so `W -> 1`.
    pub fn counit(&self) -> ScalarValue {
        let mut out = ScalarValue::zero();
        for (k, c) in &self.terms {
            if k.x == [0; 3] && k.t == 0 {
                out += c;
            }
        }
        out
    }

    /// Antipode: `S(x^mu) = -x^mu` extended antimultiplicatively, `S(W) = W^{-1}`.
    pub fn antipode(&self) -> PositionElement {
        let mut out = PositionElement::zero();
        for (k, c) in &self.terms {
            let sign = if (k.t + k.x.iter().sum::<u32>()) % 2 == 0 { 1 } else { -1 };
            let reversed = PositionElement::wave(k.wave.inverse())
                .normal_mul(&PositionElement::from_key(PosKey { t: k.t, ..PosKey::unit() }, ScalarValue::one()))
                .mul_spatial(k.x);
            out.add_assign(&reversed.scale(&c.scale(&GaussianRational::from_int(sign))));
        }
        out
    }

    /// Cocommutative coproduct: `x^mu` primitive, plane waves group-like.
    pub fn coproduct(&self) -> Tensor<PositionElement> {
        let mut out = Tensor::zero(2);
        for (k, c) in &self.terms {
            let mut acc = Tensor::one(2);
            for m in 0..3 {
                let prim = primitive(&PositionElement::x(m + 1));
                for _ in 0..k.x[m] {
                    acc = acc.mul(&prim);
                }
            }
            let prim0 = primitive(&PositionElement::x(0));
            for _ in 0..k.t {
                acc = acc.mul(&prim0);
            }
            let w = PosKey { wave: k.wave.clone(), ..PosKey::unit() };
            acc = acc.mul(&Tensor::pure(vec![w.clone(), w], ScalarValue::one()));
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Applies [`ScalarValue::kappa_expand`] to every coefficient.
    pub fn kappa_expand(&self, order: u32) -> PositionElement {
        self.map_coefficients(|c| c.kappa_expand(order))
    }
}

/// `a ⊗ 1 + 1 ⊗ a`
fn primitive(a: &PositionElement) -> Tensor<PositionElement> {
    let one = PositionElement::one();
    Tensor::product_of(&[a.clone(), one.clone()]).add(&Tensor::product_of(&[one, a.clone()]))
}

/// `(x0 + shift)^t = sum_j C(t,j) shift^{t-j} x0^j` as `(j, coefficient)`.
pub(crate) fn shifted_power(t: u32, shift: &ScalarValue) -> Vec<(u32, ScalarValue)> {
    (0..=t)
        .map(|j| {
            let c = GaussianRational::from_int(binomial(t as i64, j as i64));
            (j, shift.pow(t - j).scale(&c))
        })
        .collect()
}

impl BasisAlgebra for PositionElement {
    type Key = PosKey;

    fn unit_key() -> PosKey {
        PosKey::unit()
    }

    fn from_terms(terms: Vec<(PosKey, ScalarValue)>) -> Self {
        let mut out = PositionElement::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn basis_terms(&self) -> Vec<(PosKey, ScalarValue)> {
        self.terms.iter().map(|(k, c)| (k.clone(), c.clone())).collect()
    }

    fn mul_keys(a: &PosKey, b: &PosKey) -> Self {
        PositionElement::from_key(a.clone(), ScalarValue::one()).mul_key(b)
    }
}

impl Add for &PositionElement {
    type Output = PositionElement;
    fn add(self, rhs: &PositionElement) -> PositionElement {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &PositionElement {
    type Output = PositionElement;
    fn sub(self, rhs: &PositionElement) -> PositionElement {
        let mut out = self.clone();
        out.add_assign(&-rhs);
        out
    }
}

impl Neg for &PositionElement {
    type Output = PositionElement;
    fn neg(self) -> PositionElement {
        self.map_coefficients(|c| -c)
    }
}

impl Mul for &PositionElement {
    type Output = PositionElement;
    fn mul(self, rhs: &PositionElement) -> PositionElement {
        self.normal_mul(rhs)
    }
}

impl From<ScalarValue> for PositionElement {
    fn from(s: ScalarValue) -> Self {
        PositionElement::scalar(s)
    }
}

/// Renders `coeff * f1 * f2 ...` terms joined by `+`/`-`.
pub(crate) fn render_sum<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Vec<String>, &'a ScalarValue)>,
) -> fmt::Result {
    let mut first = true;
    for (factors, c) in terms {
        let body = factors.join(" * ");
        let (negative, text) = match c.as_constant() {
            Some(g) => {
                let (neg, g) = split_sign(&g);
                (neg, term_body(&g, &body, factors.is_empty()))
            }
            None if c.len() == 1 => {
                let (m, g) = c.terms().next().expect("one term");
                let (neg, g) = split_sign(g);
                let scalar = term_body(&g, &m.to_string(), m.is_one());
                if factors.is_empty() {
                    (neg, scalar)
                } else {
                    (neg, format!("{} * {}", scalar, body))
                }
            }
            None => {
                if factors.is_empty() {
                    (false, format!("({})", c))
                } else {
                    (false, format!("({}) * {}", c, body))
                }
            }
        };
        match (first, negative) {
            (true, true) => write!(f, "-{}", text)?,
            (true, false) => write!(f, "{}", text)?,
            (false, true) => write!(f, " - {}", text)?,
            (false, false) => write!(f, " + {}", text)?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for PositionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_sum(f, self.terms.iter().map(|(k, c)| (k.factors(), c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(mu: usize) -> PositionElement {
        PositionElement::x(mu)
    }

    fn i_over_kappa() -> ScalarValue {
        &ScalarValue::i() * &ScalarValue::kappa_pow(-1)
    }

    #[test]
    fn time_coordinate_moves_past_space() {
        let lhs = &x(0) * &x(1);
        let rhs = &(&x(1) * &x(0)) + &x(1).scale(&i_over_kappa());
        assert_eq!(lhs, rhs);
        assert_eq!(&x(1) * &x(2), &x(2) * &x(1));
    }

    #[test]
    fn generator_commutators() {
        for mu in 0..4 {
            for nu in 0..4 {
                let lhs = x(mu).commutator(&x(nu));
                let d = |a: usize| if a == 0 { 1 } else { 0 };
                let rhs = &x(nu).scale(&i_over_kappa().scale(&GaussianRational::from_int(d(mu))))
                    - &x(mu).scale(&i_over_kappa().scale(&GaussianRational::from_int(d(nu))));
                assert_eq!(lhs, rhs, "[x{mu}, x{nu}]");
            }
        }
    }

    #[test]
    fn plane_wave_product_law() {
        let w1 = PositionElement::label_wave(1);
        let w2 = PositionElement::label_wave(2);
        let prod = &w1 * &w2;
        let shrink = ScalarValue::e_pow(1, -1);
        let expected = PlaneWave {
            time: vec![(1, 1), (2, 1)],
            spatial: std::array::from_fn(|m| {
                &ScalarValue::k(1, m as u8 + 1) + &(&shrink * &ScalarValue::k(2, m as u8 + 1))
            }),
        };
        assert_eq!(prod, PositionElement::wave(expected));
    }

    #[test]
    fn star_examples() {
        let a = &x(0) * &x(1);
        let expected = &a - &x(1).scale(&i_over_kappa());
        assert_eq!(a.star(), expected);
        assert_eq!(x(2).scale(&ScalarValue::i()).star(), x(2).scale(&-ScalarValue::i()));
        let w = PlaneWave::label(1);
        let grow = ScalarValue::e_pow(1, 1);
        let expected = PlaneWave {
            time: vec![(1, -1)],
            spatial: std::array::from_fn(|m| -&(&grow * &ScalarValue::k(1, m as u8 + 1))),
        };
        assert_eq!(PositionElement::wave(w).star(), PositionElement::wave(expected));
    }

    #[test]
    fn plane_waves_are_unitary() {
        let w = &PositionElement::label_wave(1) * &PositionElement::label_wave(2);
        assert!((&w * &w.star()).is_one());
        assert!((&w.star() * &w).is_one());
    }

    #[test]
    fn hopf_structure_on_generators() {
        let d = x(0).coproduct();
        let one = PositionElement::one();
        let expected = Tensor::product_of(&[one.clone(), x(0)]).add(&Tensor::product_of(&[x(0), one.clone()]));
        assert_eq!(d, expected);
        assert_eq!(one.coproduct(), Tensor::one(2));
        let w = PositionElement::label_wave(1);
        assert_eq!(w.coproduct(), Tensor::product_of(&[w.clone(), w]));
        for mu in 0..4 {
            assert!(x(mu).counit().is_zero());
        }
        assert_eq!((&PositionElement::scalar(ScalarValue::from_int(5)) + &x(1)).counit(), ScalarValue::from_int(5));
        let a = &x(0) * &x(1);
        assert_eq!(a.antipode(), &x(1) * &x(0));
        assert_eq!(a.antipode(), &a - &x(1).scale(&i_over_kappa()));
    }

    #[test]
    fn rendering() {
        let a = &(&x(0) * &x(1)) - &x(2).scale(&ScalarValue::from_ratio(3, 2));
        assert_eq!(a.to_string(), "-3/2 * x2 + 1i * kappa^-1 * x1 + x1 * x0");
        assert_eq!(PositionElement::label_wave(2).to_string(), "W[2]");
    }
}
