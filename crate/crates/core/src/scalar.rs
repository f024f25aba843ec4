//! Exact coefficient ring.
//!
//! A [`ScalarValue`] is a finite sum of monomials
//! `c * kappa^n * prod k[j,mu]^m * prod E[j]^p` with `c` a Gaussian rational.
//! `k[j,mu]` are the (real) momentum symbols of plane-wave label `j` and
//! `E[j]` stands for `exp(k[j,0]/kappa)`. The `E[j]` are kept as independent
//! Laurent generators; the exponential relation is only used by
//! [`ScalarValue::kappa_expand`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `re + i*im` with arbitrary precision rationals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(rat(num, den), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    pub fn imag(im: BigRational) -> Self {
        GaussianRational::new(BigRational::zero(), im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussianRational::new(&self.re / &norm, -(&self.im / &norm)))
    }
}

pub(crate) fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    /// `3/2`, `-1/2i`, `(1 - 2i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {}i)", self.re, sign, self.im.abs())
            }
        }
    }
}

/// Momentum symbol `k[label, comp]`, `comp` in 0..=3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KSym {
    pub label: u32,
    pub comp: u8,
}

/// Power product `kappa^n * prod k^m * prod E^p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub kappa: i32,
    /// sorted by symbol, exponents > 0
    pub k: Vec<(KSym, u32)>,
    /// sorted by label, exponents != 0
    pub e: Vec<(u32, i32)>,
}

impl Monomial {
    pub fn is_one(&self) -> bool {
        self.kappa == 0 && self.k.is_empty() && self.e.is_empty()
    }

    pub fn k_degree(&self) -> u32 {
        self.k.iter().map(|(_, m)| m).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            kappa: self.kappa + other.kappa,
            k: merge_exponents(&self.k, &other.k, |a, b| a + b, |m| *m == 0),
            e: merge_exponents(&self.e, &other.e, |a, b| a + b, |p| *p == 0),
        }
    }
}

fn merge_exponents<K: Ord + Copy, V: Copy>(
    a: &[(K, V)],
    b: &[(K, V)],
    add: impl Fn(V, V) -> V,
    vanishes: impl Fn(&V) -> bool,
) -> Vec<(K, V)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                let v = add(a[i].1, b[j].1);
                if !vanishes(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<String> = Vec::new();
        if self.kappa != 0 {
            factors.push(power("kappa".to_string(), self.kappa as i64));
        }
        for (s, m) in &self.k {
            factors.push(power(format!("k[{},{}]", s.label, s.comp), *m as i64));
        }
        for (l, p) in &self.e {
            factors.push(power(format!("E[{}]", l), *p as i64));
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" * "))
        }
    }
}

pub(crate) fn power(base: String, exp: i64) -> String {
    if exp == 1 {
        base
    } else {
        format!("{}^{}", base, exp)
    }
}

/// Element of the coefficient ring. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScalarValue {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl ScalarValue {
    pub fn zero() -> Self {
        ScalarValue::default()
    }

    pub fn one() -> Self {
        ScalarValue::from_gaussian(GaussianRational::one())
    }

    pub fn i() -> Self {
        ScalarValue::from_gaussian(GaussianRational::i())
    }

    pub fn from_int(n: i64) -> Self {
        ScalarValue::from_gaussian(GaussianRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ScalarValue::from_gaussian(GaussianRational::from_ratio(num, den))
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        ScalarValue::from_term(Monomial::default(), c)
    }

    pub fn from_term(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ScalarValue { terms }
    }

    /// `kappa^n`
    pub fn kappa_pow(n: i32) -> Self {
        ScalarValue::from_term(Monomial { kappa: n, ..Default::default() }, GaussianRational::one())
    }

    /// `k[label, comp]`
    pub fn k(label: u32, comp: u8) -> Self {
        let m = Monomial { k: vec![(KSym { label, comp }, 1)], ..Default::default() };
        ScalarValue::from_term(m, GaussianRational::one())
    }

    /// `E[label]^p`
    pub fn e_pow(label: u32, p: i32) -> Self {
        if p == 0 {
            return ScalarValue::one();
        }
        let m = Monomial { e: vec![(label, p)], ..Default::default() };
        ScalarValue::from_term(m, GaussianRational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    /// The constant value, if this scalar has no symbolic part.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> ScalarValue {
        if c.is_zero() {
            return ScalarValue::zero();
        }
        ScalarValue {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Inverse of a single term free of `k` symbols.
    pub fn inverse(&self) -> Option<ScalarValue> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if !m.k.is_empty() {
            return None;
        }
        let inv = Monomial { kappa: -m.kappa, k: Vec::new(), e: m.e.iter().map(|&(j, p)| (j, -p)).collect() };
        Some(ScalarValue::from_term(inv, c.inverse()?))
    }

    pub fn conj(&self) -> ScalarValue {
        ScalarValue {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> ScalarValue {
        let mut acc = ScalarValue::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Largest total degree in the `k` symbols, `None` for zero.
    pub fn max_k_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::k_degree).max()
    }

    /// Drops every monomial whose total `k` degree exceeds `max`.
    pub fn truncate_k_degree(&self, max: u32) -> ScalarValue {
        ScalarValue {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.k_degree() <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest kappa exponent among the monomials.
    pub fn max_kappa_exponent(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.kappa).max()
    }

    /// Large-kappa expansion: every `E[j]^p` becomes the series of
    /// `exp(p k[j,0]/kappa)` and monomials below `kappa^-order` are dropped.
    ///
    /// Series are carried far enough that monomials with positive kappa
    /// exponents are expanded exactly to the requested order.
    pub fn kappa_expand(&self, order: u32) -> ScalarValue {
        let floor = -(order as i32);
        let mut out = ScalarValue::zero();
        for (m, c) in &self.terms {
            if m.kappa < floor {
                continue;
            }
            let depth = (m.kappa - floor) as u32;
            let base = Monomial { kappa: m.kappa, k: m.k.clone(), e: Vec::new() };
            let mut acc = ScalarValue::from_term(base, c.clone());
            for &(label, p) in &m.e {
                acc = &acc * &exp_series(label, p, depth);
            }
            for (am, ac) in acc.terms {
                if am.kappa >= floor {
                    out.add_term(am, ac);
                }
            }
        }
        out
    }
}

/// `sum_{n=0}^{depth} (p k[label,0] / kappa)^n / n!`
fn exp_series(label: u32, p: i32, depth: u32) -> ScalarValue {
    let mut out = ScalarValue::one();
    let mut coeff = BigRational::one();
    for n in 1..=depth {
        coeff = coeff * BigRational::from_integer(BigInt::from(p)) / BigRational::from_integer(BigInt::from(n));
        let m = Monomial {
            kappa: -(n as i32),
            k: vec![(KSym { label, comp: 0 }, n)],
            e: Vec::new(),
        };
        out.add_term(m, GaussianRational::real(coeff.clone()));
    }
    out
}

impl From<i64> for ScalarValue {
    fn from(n: i64) -> Self {
        ScalarValue::from_int(n)
    }
}

impl From<GaussianRational> for ScalarValue {
    fn from(c: GaussianRational) -> Self {
        ScalarValue::from_gaussian(c)
    }
}

impl Add for &ScalarValue {
    type Output = ScalarValue;
    fn add(self, rhs: &ScalarValue) -> ScalarValue {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ScalarValue {
    type Output = ScalarValue;
    fn add(mut self, rhs: ScalarValue) -> ScalarValue {
        self += &rhs;
        self
    }
}

impl AddAssign<&ScalarValue> for ScalarValue {
    fn add_assign(&mut self, rhs: &ScalarValue) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&ScalarValue> for ScalarValue {
    fn sub_assign(&mut self, rhs: &ScalarValue) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Sub for &ScalarValue {
    type Output = ScalarValue;
    fn sub(self, rhs: &ScalarValue) -> ScalarValue {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ScalarValue {
    type Output = ScalarValue;
    fn sub(mut self, rhs: ScalarValue) -> ScalarValue {
        self -= &rhs;
        self
    }
}

impl Mul for &ScalarValue {
    type Output = ScalarValue;
    fn mul(self, rhs: &ScalarValue) -> ScalarValue {
        let mut out = ScalarValue::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for ScalarValue {
    type Output = ScalarValue;
    fn mul(self, rhs: ScalarValue) -> ScalarValue {
        &self * &rhs
    }
}

impl Neg for &ScalarValue {
    type Output = ScalarValue;
    fn neg(self) -> ScalarValue {
        ScalarValue {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for ScalarValue {
    type Output = ScalarValue;
    fn neg(self) -> ScalarValue {
        -&self
    }
}

impl fmt::Display for ScalarValue {
    /// Renders e.g. `(3/2 + 1i) * kappa^-2 * k[1,0]^2 * E[1]^-1 - 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let (negative, c) = split_sign(c);
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", term_body(&c, &m.to_string(), m.is_one()))?;
        }
        Ok(())
    }
}

/// Pulls a leading minus sign out of a coefficient where that reads better.
pub(crate) fn split_sign(c: &GaussianRational) -> (bool, GaussianRational) {
    let negative = if c.re.is_zero() { c.im.is_negative() } else { c.re.is_negative() && !c.im.is_positive() };
    if negative {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

/// `c * body`, omitting a unit coefficient.
pub(crate) fn term_body(c: &GaussianRational, body: &str, body_is_one: bool) -> String {
    if body_is_one {
        c.to_string()
    } else if c.is_one() {
        body.to_string()
    } else {
        format!("{} * {}", c, body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch() -> ScalarValue {
        (&ScalarValue::e_pow(1, 1) + &ScalarValue::e_pow(1, -1)).scale(&GaussianRational::from_ratio(1, 2))
    }

    fn sh() -> ScalarValue {
        (&ScalarValue::e_pow(1, 1) - &ScalarValue::e_pow(1, -1)).scale(&GaussianRational::from_ratio(1, 2))
    }

    fn i_over_kappa() -> ScalarValue {
        &ScalarValue::i() * &ScalarValue::kappa_pow(-1)
    }

    #[test]
    fn additive_inverse_cancels() {
        assert!((&i_over_kappa() + &(-&i_over_kappa())).is_zero());
        assert_eq!(&ScalarValue::one() + &ScalarValue::one(), ScalarValue::from_int(2));
    }

    #[test]
    fn products() {
        assert_eq!(&i_over_kappa() * &i_over_kappa(), -&ScalarValue::kappa_pow(-2));
        assert!((&ScalarValue::e_pow(1, 1) * &ScalarValue::e_pow(1, -1)).is_one());
        let one = &(&sh() * &sh()) - &(&ch() * &ch());
        assert_eq!(one, ScalarValue::from_int(-1));
    }

    #[test]
    fn conjugation() {
        assert_eq!(i_over_kappa().conj(), -&i_over_kappa());
        let z = ScalarValue::from_gaussian(GaussianRational::new(rat(3, 1), rat(2, 1)));
        assert_eq!(z.conj(), ScalarValue::from_gaussian(GaussianRational::new(rat(3, 1), rat(-2, 1))));
        let w = &(&ScalarValue::i() * &ScalarValue::k(1, 1)) * &ScalarValue::e_pow(1, 1);
        assert_eq!(w.conj(), -&w);
    }

    #[test]
    fn expansion_of_exponentials() {
        assert!(ScalarValue::e_pow(1, 1).kappa_expand(0).is_one());
        let first = &ScalarValue::one() + &(&ScalarValue::k(1, 0) * &ScalarValue::kappa_pow(-1));
        assert_eq!(ScalarValue::e_pow(1, 1).kappa_expand(1), first);
        assert_eq!(sh().kappa_expand(1), &ScalarValue::k(1, 0) * &ScalarValue::kappa_pow(-1));
    }

    #[test]
    fn expansion_reaches_through_positive_kappa_powers() {
        // kappa^2 (E - 1/E)/2 = k0 kappa + k0^3/(6 kappa) + ...
        let s = &ScalarValue::kappa_pow(2) * &sh();
        let expected = &ScalarValue::k(1, 0) * &ScalarValue::kappa_pow(1);
        assert_eq!(s.kappa_expand(0), expected);
    }

    #[test]
    fn rendering() {
        let m = Monomial {
            kappa: -2,
            k: vec![(KSym { label: 1, comp: 0 }, 2)],
            e: vec![(1, -1)],
        };
        let s = ScalarValue::from_term(m, GaussianRational::new(rat(3, 2), rat(1, 1)));
        assert_eq!(s.to_string(), "(3/2 + 1i) * kappa^-2 * k[1,0]^2 * E[1]^-1");
        assert_eq!((-&i_over_kappa()).to_string(), "-1i * kappa^-1");
        assert_eq!(ScalarValue::zero().to_string(), "0");
    }
}
