//! Evaluation of parsed expressions into algebra values.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::action::{act, MixedElement};
use crate::error::{KminkError, Result};
use crate::expr::{parse, Expr};
use crate::forms::{exterior_d, exterior_d2, star_form, wedge, OneForm, TwoForm};
use crate::minkowski::{PlaneWave, PosKey, PositionElement};
use crate::momentum::{constants, MomKey, MomentumElement};
use crate::scalar::{GaussianRational, ScalarValue};

/// Result of evaluating an expression. Scalars, coordinate and momentum
/// elements all live in the `Mixed` (Heisenberg double) variant.
#[derive(Clone, Debug, Eq)]
pub enum Value {
    Mixed(MixedElement),
    OneForm(OneForm),
    TwoForm(TwoForm),
}

impl Value {
    pub fn scalar(s: ScalarValue) -> Value {
        Value::Mixed(MixedElement::from_position(&PositionElement::scalar(s)))
    }

    pub fn position(a: &PositionElement) -> Value {
        Value::Mixed(MixedElement::from_position(a))
    }

    pub fn momentum(p: &MomentumElement) -> Value {
        Value::Mixed(MixedElement::from_momentum(p))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Mixed(m) if m.as_position().is_some() => "position element",
            Value::Mixed(m) if m.as_momentum().is_some() => "momentum element",
            Value::Mixed(_) => "mixed element",
            Value::OneForm(_) => "one-form",
            Value::TwoForm(_) => "two-form",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Mixed(m) => m.is_zero(),
            Value::OneForm(w) => w.is_zero(),
            Value::TwoForm(w) => w.is_zero(),
        }
    }

    pub fn as_position(&self) -> Result<PositionElement> {
        match self {
            Value::Mixed(m) => m.as_position(),
            _ => None,
        }
        .ok_or_else(|| KminkError::Type(format!("expected a position element, got a {}", self.kind())))
    }

    pub fn as_momentum(&self) -> Result<MomentumElement> {
        match self {
            Value::Mixed(m) => m.as_momentum(),
            _ => None,
        }
        .ok_or_else(|| KminkError::Type(format!("expected a momentum element, got a {}", self.kind())))
    }

    fn as_scalar(&self) -> Option<ScalarValue> {
        self.as_position().ok()?.as_scalar()
    }

    pub fn add(&self, other: &Value) -> Result<Value> {
        Ok(match (self, other) {
            (Value::Mixed(a), Value::Mixed(b)) => Value::Mixed(a + b),
            (Value::OneForm(a), Value::OneForm(b)) => Value::OneForm(a + b),
            (Value::TwoForm(a), Value::TwoForm(b)) => Value::TwoForm(a + b),
            (a, b) if a.is_zero() => b.clone(),
            (a, b) if b.is_zero() => a.clone(),
            (a, b) => return Err(KminkError::Type(format!("cannot add a {} and a {}", a.kind(), b.kind()))),
        })
    }

    pub fn neg(&self) -> Value {
        self.scale(&ScalarValue::from_int(-1))
    }

    pub fn sub(&self, other: &Value) -> Result<Value> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &ScalarValue) -> Value {
        match self {
            Value::Mixed(m) => Value::Mixed(m.scale(s)),
            Value::OneForm(w) => Value::OneForm(w.scale(s)),
            Value::TwoForm(w) => Value::TwoForm(w.scale(s)),
        }
    }

    pub fn mul(&self, other: &Value) -> Result<Value> {
        let type_error = || KminkError::Type(format!("cannot multiply a {} by a {}", self.kind(), other.kind()));
        Ok(match (self, other) {
            (Value::Mixed(a), Value::Mixed(b)) => Value::Mixed(a.mul(b)),
            (Value::Mixed(_), Value::OneForm(w)) => Value::OneForm(w.left_mul(&self.as_position().map_err(|_| type_error())?)),
            (Value::Mixed(_), Value::TwoForm(w)) => Value::TwoForm(w.left_mul(&self.as_position().map_err(|_| type_error())?)),
            (Value::OneForm(w), Value::Mixed(_)) => Value::OneForm(w.right_mul(&other.as_position().map_err(|_| type_error())?)),
            (Value::TwoForm(w), Value::Mixed(_)) => Value::TwoForm(w.right_mul(&other.as_position().map_err(|_| type_error())?)),
            _ => return Err(type_error()),
        })
    }

    pub fn commutator(&self, other: &Value) -> Result<Value> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, n: i64) -> Result<Value> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Value::Mixed(MixedElement::one());
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Inverse of a single invertible term `c * W * Exp[l]`.
    pub fn inverse(&self) -> Result<Value> {
        let not_invertible = || KminkError::Type(format!("`{}` is not invertible", self));
        let Value::Mixed(m) = self else {
            return Err(not_invertible());
        };
        let mut terms = m.terms();
        let ((a, p), c) = terms.next().ok_or_else(not_invertible)?;
        if terms.next().is_some() || a.x != [0; 3] || a.t != 0 || p.p != [0; 3] || p.d != 0 {
            return Err(not_invertible());
        }
        let c = c.inverse().ok_or_else(not_invertible)?;
        let mom = MomentumElement::from_key(MomKey { lambda: -p.lambda, ..MomKey::unit() }, c);
        let pos = PositionElement::wave(a.wave.inverse());
        Ok(Value::Mixed(MixedElement::from_momentum(&mom).mul(&MixedElement::from_position(&pos))))
    }

    pub fn star(&self) -> Result<Value> {
        Ok(match self {
            Value::Mixed(m) => {
                let mut out = MixedElement::zero();
                for ((a, p), c) in m.terms() {
                    let a = PositionElement::from_key(a.clone(), c.conj()).star();
                    let p = MomentumElement::from_key(*p, ScalarValue::one()).star();
                    out = &out + &MixedElement::from_momentum(&p).mul(&MixedElement::from_position(&a));
                }
                Value::Mixed(out)
            }
            Value::OneForm(w) => Value::OneForm(star_form(w)),
            Value::TwoForm(_) => return Err(KminkError::Type("star is not defined on two-forms".into())),
        })
    }

    pub fn d(&self) -> Result<Value> {
        match self {
            Value::OneForm(w) => Ok(Value::TwoForm(exterior_d2(w))),
            Value::Mixed(_) => Ok(Value::OneForm(exterior_d(&self.as_position()?))),
            Value::TwoForm(_) => Ok(Value::Mixed(MixedElement::zero())),
        }
    }
}

/// Zero values compare equal whatever their degree, since all render as `0`.
impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Mixed(a), Value::Mixed(b)) => a == b,
            (Value::OneForm(a), Value::OneForm(b)) => a == b,
            (Value::TwoForm(a), Value::TwoForm(b)) => a == b,
            (a, b) => a.is_zero() && b.is_zero(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Mixed(m) => write!(f, "{}", m),
            Value::OneForm(w) => write!(f, "{}", w),
            Value::TwoForm(w) => write!(f, "{}", w),
        }
    }
}

fn number(num: &num_bigint::BigInt, den: &num_bigint::BigInt, imag: bool) -> ScalarValue {
    let q = BigRational::new(num.clone(), den.clone());
    let g = if imag { GaussianRational::imag(q) } else { GaussianRational::real(q) };
    ScalarValue::from_gaussian(g)
}

/// Reads an integer combination `sum c_j k[j,0]`.
fn time_momentum(s: &ScalarValue) -> Result<Vec<(u32, i64)>> {
    let bad = || KminkError::Type(format!("wave time momentum must be an integer combination of k[j,0], got `{}`", s));
    let mut map = BTreeMap::new();
    for (m, c) in s.terms() {
        match m.k.as_slice() {
            [(sym, 1)] if sym.comp == 0 && m.kappa == 0 && m.e.is_empty() && c.im.is_zero() && c.re.denom().is_one() => {
                let n = c.re.numer().to_i64().ok_or_else(bad)?;
                *map.entry(sym.label).or_insert(0) += n;
            }
            _ => return Err(bad()),
        }
    }
    Ok(map.into_iter().filter(|(_, c)| *c != 0).collect())
}

fn scalar_of(v: &Value, what: &str) -> Result<ScalarValue> {
    v.as_scalar().ok_or_else(|| KminkError::Type(format!("{} must be a scalar, got `{}`", what, v)))
}

pub fn eval(e: &Expr) -> Result<Value> {
    let k = constants();
    Ok(match e {
        Expr::Number { num, den, imag } => Value::scalar(number(num, den, *imag)),
        Expr::ImagUnit => Value::scalar(ScalarValue::i()),
        Expr::Kappa => Value::scalar(ScalarValue::kappa_pow(1)),
        Expr::K(j, m) => Value::scalar(ScalarValue::k(*j, *m as u8)),
        Expr::EVar(j) => Value::scalar(ScalarValue::e_pow(*j, 1)),
        Expr::Coord(m) => Value::position(&PositionElement::x(*m)),
        Expr::Momentum(m) => Value::momentum(&MomentumElement::p(*m)),
        Expr::Tau(i) => Value::OneForm(OneForm::basis(*i)),
        Expr::Exp(l) => Value::momentum(&MomentumElement::exp(*l)),
        Expr::Wave(j) => Value::position(&PositionElement::label_wave(*j)),
        Expr::WaveExplicit { time, spatial } => {
            let time = time_momentum(&scalar_of(&eval(time)?, "wave time momentum")?)?;
            let mut s: [ScalarValue; 3] = Default::default();
            for (slot, e) in s.iter_mut().zip(spatial.iter()) {
                *slot = scalar_of(&eval(e)?, "wave spatial momentum")?;
            }
            let key = PosKey { wave: Arc::new(PlaneWave { time, spatial: s }), ..PosKey::unit() };
            Value::position(&PositionElement::from_key(key, ScalarValue::one()))
        }
        Expr::F(i, j) => Value::momentum(k.f.up(*i, *j)),
        Expr::Del(i) => Value::momentum(&k.del[*i]),
        Expr::VectorField(i) => Value::momentum(&k.e[*i]),
        Expr::BoxOp => Value::momentum(&k.boxk),
        Expr::Add(a, b) => eval(a)?.add(&eval(b)?)?,
        Expr::Sub(a, b) => eval(a)?.sub(&eval(b)?)?,
        Expr::Mul(a, b) => eval(a)?.mul(&eval(b)?)?,
        Expr::Neg(a) => eval(a)?.neg(),
        Expr::Pow(a, n) => eval(a)?.pow(*n)?,
        Expr::Commutator(a, b) => eval(a)?.commutator(&eval(b)?)?,
        Expr::Star(a) => eval(a)?.star()?,
        Expr::D(a) => eval(a)?.d()?,
        Expr::Wedge(a, b) => match (eval(a)?, eval(b)?) {
            (Value::OneForm(x), Value::OneForm(y)) => Value::TwoForm(wedge(&x, &y)),
            (x, y) => return Err(KminkError::Type(format!("wedge needs two one-forms, got a {} and a {}", x.kind(), y.kind()))),
        },
        Expr::Act(p, a) => {
            let p = eval(p)?.as_momentum()?;
            let a = eval(a)?.as_position()?;
            Value::position(&act(&p, &a))
        }
    })
}

/// Parses and evaluates `text`.
pub fn eval_str(text: &str) -> Result<Value> {
    eval(&parse(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Generator;

    fn ev(text: &str) -> Value {
        eval_str(text).unwrap_or_else(|e| panic!("{text}: {e}"))
    }

    fn assert_roundtrip(v: &Value) {
        assert_eq!(&ev(&v.to_string()), v, "{v}");
    }

    #[test]
    fn coordinate_commutator() {
        assert_eq!(ev("x0 * x1 - x1 * x0"), ev("i * kappa^-1 * x1"));
        assert_eq!(ev("[x0, x1]"), ev("x0 * x1 - x1 * x0"));
        assert_eq!(ev("[x1, x2]"), ev("0"));
    }

    #[test]
    fn action_examples() {
        assert_eq!(ev("act(P0, x0^2)"), ev("-2i * x0"));
        assert_eq!(ev("act(del[1], x1^2)"), ev("2 * x1"));
        assert_eq!(ev("act(Exp[1] * Exp[-1], x0)"), ev("x0"));
        assert_eq!(ev("act(P1, W[1])"), ev("k[1,1] * W[1]"));
    }

    #[test]
    fn forms_and_inverses() {
        assert_eq!(ev("d(x1)"), ev("tau[1]"));
        assert_eq!(ev("d(d(x0 * x1))"), ev("0"));
        assert_eq!(ev("W[1] * W[1]^-1"), ev("1"));
        assert_eq!(ev("Exp[2]^-1"), ev("Exp[-2]"));
        assert_eq!(ev("star(W[1]) * W[1]"), ev("1"));
        assert_eq!(ev("wave(k[1,0]; k[1,1], k[1,2], k[1,3])"), ev("W[1]"));
        assert!(ev("[tau[0], x1]").to_string().contains("tau"));
    }

    #[test]
    fn type_errors() {
        for bad in ["wedge(x0, tau[1])", "act(x0, x1)", "tau[1] * tau[2]", "x0^-1", "wave(k[1,1]; 0, 0, 0)", "tau[0] + x1", "star(wedge(tau[0], tau[1]))"] {
            assert!(matches!(eval_str(bad), Err(KminkError::Type(_))), "{bad}");
        }
    }

    #[test]
    fn rendered_values_roundtrip() {
        for text in [
            "x0 * x1 - x1 * x0",
            "f[0,0] + del[4] + box",
            "W[1] * W[2] * x0 + (1/2 - 3i) * k[1,2] * E[1]^-1 * x1^2",
            "P1 * x0 * Exp[-1]",
            "x0 * tau[4] * x1",
            "wedge(d(x0 * x1), tau[2] * x0)",
            "d(x0 * tau[1])",
            "star(W[1] * x2)",
        ] {
            assert_roundtrip(&ev(text));
        }
        let mut gen = Generator::new(5, 3);
        for _ in 0..40 {
            assert_roundtrip(&Value::position(&gen.position(true)));
            assert_roundtrip(&Value::momentum(&gen.momentum()));
            assert_roundtrip(&Value::OneForm(gen.one_form(true)));
        }
    }
}
