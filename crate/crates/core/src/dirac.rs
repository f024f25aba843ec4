//! Gamma matrices, the Dirac operator `D = γ^i ∂_i` and its Clifford image.

use std::fmt;
use std::ops::{Add, Sub};

use crate::action::{act, act_derivative};
use crate::metric::{g2, DIM};
use crate::minkowski::PositionElement;
use crate::momentum::{constants, MomentumElement};
use crate::report::{Outcome, Status};
use crate::scalar::ScalarValue;

/// 4×4 matrix with scalar entries.
pub type SMatrix = [[ScalarValue; 4]; 4];

fn zero_matrix() -> SMatrix {
    Default::default()
}

fn identity() -> SMatrix {
    let mut m = zero_matrix();
    for (r, row) in m.iter_mut().enumerate() {
        row[r] = ScalarValue::one();
    }
    m
}

fn from_ints(re: [[i64; 4]; 4], im: [[i64; 4]; 4]) -> SMatrix {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| &ScalarValue::from_int(re[r][c]) + &(&ScalarValue::i() * &ScalarValue::from_int(im[r][c])))
    })
}

pub fn mat_mul(a: &SMatrix, b: &SMatrix) -> SMatrix {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let mut s = ScalarValue::zero();
            for k in 0..4 {
                s += &(&a[r][k] * &b[k][c]);
            }
            s
        })
    })
}

fn mat_add(a: &SMatrix, b: &SMatrix) -> SMatrix {
    std::array::from_fn(|r| std::array::from_fn(|c| &a[r][c] + &b[r][c]))
}

fn mat_scale(a: &SMatrix, s: &ScalarValue) -> SMatrix {
    std::array::from_fn(|r| std::array::from_fn(|c| &a[r][c] * s))
}

fn mat_dagger(a: &SMatrix) -> SMatrix {
    std::array::from_fn(|r| std::array::from_fn(|c| a[c][r].conj()))
}

fn mat_is_zero(a: &SMatrix) -> bool {
    a.iter().flatten().all(ScalarValue::is_zero)
}

fn render_matrix(a: &SMatrix) -> String {
    let rows: Vec<String> = a
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}

/// Coefficient matrix of the `∂_4` term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gamma4Choice {
    Zero,
    ScalarUnit(ScalarValue),
    Pseudoscalar(ScalarValue),
}

impl fmt::Display for Gamma4Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma4Choice::Zero => write!(f, "zero"),
            Gamma4Choice::ScalarUnit(l) => write!(f, "unit:{}", l),
            Gamma4Choice::Pseudoscalar(l) => write!(f, "gamma5:{}", l),
        }
    }
}

/// Dirac representation: `γ^0 = diag(1, 1, -1, -1)`, `γ^m` off-diagonal
/// with Pauli blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRep {
    pub gamma: [SMatrix; 4],
    pub gamma5: SMatrix,
    pub gamma4: Gamma4Choice,
}

impl GammaRep {
    pub fn dirac(gamma4: Gamma4Choice) -> Self {
        let z = [[0; 4]; 4];
        let g0 = from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]], z);
        let g1 = from_ints([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]], z);
        let g2 = from_ints(z, [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]]);
        let g3 = from_ints([[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]], z);
        let prod = mat_mul(&mat_mul(&g0, &g1), &mat_mul(&g2, &g3));
        let gamma5 = mat_scale(&prod, &ScalarValue::i());
        GammaRep { gamma: [g0, g1, g2, g3], gamma5, gamma4 }
    }

    /// `Γ^i`: the gamma matrices for `i < 4`, the `∂_4` coefficient for `i = 4`.
    pub fn coefficient(&self, i: usize) -> SMatrix {
        if i < 4 {
            return self.gamma[i].clone();
        }
        match &self.gamma4 {
            Gamma4Choice::Zero => zero_matrix(),
            Gamma4Choice::ScalarUnit(l) => mat_scale(&identity(), l),
            Gamma4Choice::Pseudoscalar(l) => mat_scale(&self.gamma5, l),
        }
    }
}

/// Element of `C^4 ⊗ M_kappa`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpinorElement {
    pub comp: [PositionElement; 4],
}

impl SpinorElement {
    pub fn zero() -> Self {
        SpinorElement::default()
    }

    /// Constant spinor with the given component values.
    pub fn constant(values: [i64; 4]) -> Self {
        SpinorElement { comp: values.map(|v| PositionElement::scalar(ScalarValue::from_int(v))) }
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(PositionElement::is_zero)
    }

    pub fn left_mul(&self, a: &PositionElement) -> SpinorElement {
        SpinorElement { comp: std::array::from_fn(|r| a.normal_mul(&self.comp[r])) }
    }

    pub fn apply_matrix(&self, m: &SMatrix) -> SpinorElement {
        SpinorElement {
            comp: std::array::from_fn(|r| {
                let mut s = PositionElement::zero();
                for c in 0..4 {
                    if !m[r][c].is_zero() {
                        s = &s + &self.comp[c].scale(&m[r][c]);
                    }
                }
                s
            }),
        }
    }
}

impl Add for &SpinorElement {
    type Output = SpinorElement;
    fn add(self, rhs: &SpinorElement) -> SpinorElement {
        SpinorElement { comp: std::array::from_fn(|r| &self.comp[r] + &rhs.comp[r]) }
    }
}

impl Sub for &SpinorElement {
    type Output = SpinorElement;
    fn sub(self, rhs: &SpinorElement) -> SpinorElement {
        SpinorElement { comp: std::array::from_fn(|r| &self.comp[r] - &rhs.comp[r]) }
    }
}

impl fmt::Display for SpinorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.comp.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// 4×4 matrix of momentum elements acting on spinors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatrixMomentumOperator {
    pub entries: [[MomentumElement; 4]; 4],
}

impl MatrixMomentumOperator {
    /// `m ⊗ p`
    pub fn from_matrix(m: &SMatrix, p: &MomentumElement) -> Self {
        MatrixMomentumOperator { entries: std::array::from_fn(|r| std::array::from_fn(|c| p.scale(&m[r][c]))) }
    }

    pub fn identity_times(p: &MomentumElement) -> Self {
        MatrixMomentumOperator::from_matrix(&identity(), p)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(MomentumElement::is_zero)
    }

    pub fn apply(&self, psi: &SpinorElement) -> SpinorElement {
        SpinorElement {
            comp: std::array::from_fn(|r| {
                let mut s = PositionElement::zero();
                for c in 0..4 {
                    if !self.entries[r][c].is_zero() && !psi.comp[c].is_zero() {
                        s = &s + &act(&self.entries[r][c], &psi.comp[c]);
                    }
                }
                s
            }),
        }
    }

    pub fn compose(&self, other: &MatrixMomentumOperator) -> MatrixMomentumOperator {
        MatrixMomentumOperator {
            entries: std::array::from_fn(|r| {
                std::array::from_fn(|c| {
                    let mut s = MomentumElement::zero();
                    for k in 0..4 {
                        if !self.entries[r][k].is_zero() && !other.entries[k][c].is_zero() {
                            s = &s + &(&self.entries[r][k] * &other.entries[k][c]);
                        }
                    }
                    s
                })
            }),
        }
    }

    /// Entrywise star combined with transposition.
    pub fn dagger(&self) -> MatrixMomentumOperator {
        MatrixMomentumOperator { entries: std::array::from_fn(|r| std::array::from_fn(|c| self.entries[c][r].star())) }
    }

    pub fn kappa_expand(&self, order: u32) -> MatrixMomentumOperator {
        MatrixMomentumOperator {
            entries: std::array::from_fn(|r| std::array::from_fn(|c| self.entries[r][c].kappa_expand(order))),
        }
    }
}

impl Add for &MatrixMomentumOperator {
    type Output = MatrixMomentumOperator;
    fn add(self, rhs: &MatrixMomentumOperator) -> MatrixMomentumOperator {
        MatrixMomentumOperator {
            entries: std::array::from_fn(|r| std::array::from_fn(|c| &self.entries[r][c] + &rhs.entries[r][c])),
        }
    }
}

impl Sub for &MatrixMomentumOperator {
    type Output = MatrixMomentumOperator;
    fn sub(self, rhs: &MatrixMomentumOperator) -> MatrixMomentumOperator {
        MatrixMomentumOperator {
            entries: std::array::from_fn(|r| std::array::from_fn(|c| &self.entries[r][c] - &rhs.entries[r][c])),
        }
    }
}

impl fmt::Display for MatrixMomentumOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for r in 0..4 {
            for c in 0..4 {
                if self.entries[r][c].is_zero() {
                    continue;
                }
                if !first {
                    write!(f, "; ")?;
                }
                first = false;
                write!(f, "[{},{}]: {}", r, c, self.entries[r][c])?;
            }
        }
        Ok(())
    }
}

/// `D = Γ^i ∂_i`
pub fn build_dirac(rep: &GammaRep) -> MatrixMomentumOperator {
    let del = &constants().del;
    let mut out = MatrixMomentumOperator::default();
    for i in 0..DIM {
        let m = rep.coefficient(i);
        if !mat_is_zero(&m) {
            out = &out + &MatrixMomentumOperator::from_matrix(&m, &del[i]);
        }
    }
    out
}

/// `τ^i_c = Γ^j f^i_j`, the image for which `[D, a] = ∂_i(a) τ^i_c`.
pub fn clifford_image(i: usize, rep: &GammaRep) -> MatrixMomentumOperator {
    let f = &constants().f;
    let mut out = MatrixMomentumOperator::default();
    for j in 0..DIM {
        let m = rep.coefficient(j);
        if !mat_is_zero(&m) {
            out = &out + &MatrixMomentumOperator::from_matrix(&m, f.up(i, j));
        }
    }
    out
}

/// `Γ^j f_j^i`, with the index positions exchanged through the metric.
pub fn clifford_image_transposed(i: usize, rep: &GammaRep) -> MatrixMomentumOperator {
    let f = &constants().f;
    let mut out = MatrixMomentumOperator::default();
    for j in 0..DIM {
        let m = rep.coefficient(j);
        if !mat_is_zero(&m) {
            out = &out + &MatrixMomentumOperator::from_matrix(&m, &f.low(j, i));
        }
    }
    out
}

/// `D(aψ) - a D(ψ) - Σ_i ∂_i(a) (images[i] ψ)`
pub fn diagram_residual(
    rep: &GammaRep,
    images: &[MatrixMomentumOperator; DIM],
    a: &PositionElement,
    psi: &SpinorElement,
) -> SpinorElement {
    let d = build_dirac(rep);
    let lhs = &d.apply(&psi.left_mul(a)) - &d.apply(psi).left_mul(a);
    let mut rhs = SpinorElement::zero();
    for (i, image) in images.iter().enumerate() {
        let da = act_derivative(i, a);
        if !da.is_zero() {
            rhs = &rhs + &image.apply(psi).left_mul(&da);
        }
    }
    &lhs - &rhs
}

pub fn clifford_images(rep: &GammaRep) -> [MatrixMomentumOperator; DIM] {
    std::array::from_fn(|i| clifford_image(i, rep))
}

pub fn check_diagram(rep: &GammaRep, a: &PositionElement, psi: &SpinorElement) -> Outcome {
    let residual = diagram_residual(rep, &clifford_images(rep), a, psi);
    Outcome::zero_check(format!("diagram[{}]", rep.gamma4), "0.8", residual)
}

/// The same diagram with `Γ^j f_j^i`; reported, not asserted.
pub fn check_diagram_transposed(rep: &GammaRep, a: &PositionElement, psi: &SpinorElement) -> Outcome {
    let images = std::array::from_fn(|i| clifford_image_transposed(i, rep));
    let residual = diagram_residual(rep, &images, a, psi);
    Outcome::new(format!("diagram-transposed-image[{}]", rep.gamma4), "2.10", Status::Reported, residual.to_string())
}

/// `D² - □·Id`: asserted for the zero choice, reported otherwise.
pub fn check_dirac_square(rep: &GammaRep) -> Outcome {
    let d = build_dirac(rep);
    let residual = &d.compose(&d) - &MatrixMomentumOperator::identity_times(&constants().boxk);
    let id = format!("dirac-square[{}]", rep.gamma4);
    match rep.gamma4 {
        Gamma4Choice::Zero => Outcome::zero_check(id, "2.9", residual),
        _ => Outcome::new(id, "2.9", Status::Reported, residual.to_string()),
    }
}

/// `γ^mu γ^nu + γ^nu γ^mu = 2 g^{mu nu}`, plus the `γ5` relations.
pub fn check_clifford_relations(rep: &GammaRep) -> Vec<Outcome> {
    let mut out = Vec::new();
    let id = identity();
    for mu in 0..4 {
        for nu in 0..4 {
            let anti = mat_add(&mat_mul(&rep.gamma[mu], &rep.gamma[nu]), &mat_mul(&rep.gamma[nu], &rep.gamma[mu]));
            let expected = mat_scale(&id, &ScalarValue::from_int(2 * g2(mu, nu)));
            let diff = mat_add(&anti, &mat_scale(&expected, &ScalarValue::from_int(-1)));
            out.push(Outcome::zero_check(format!("clifford[{mu},{nu}]"), "2.8", matrix_residual(&diff)));
        }
    }
    for mu in 0..4 {
        let anti = mat_add(&mat_mul(&rep.gamma5, &rep.gamma[mu]), &mat_mul(&rep.gamma[mu], &rep.gamma5));
        out.push(Outcome::zero_check(format!("gamma5-anticommutes[{mu}]"), "2.8", matrix_residual(&anti)));
    }
    let sq = mat_add(&mat_mul(&rep.gamma5, &rep.gamma5), &mat_scale(&id, &ScalarValue::from_int(-1)));
    out.push(Outcome::zero_check("gamma5-square", "2.8", matrix_residual(&sq)));
    out
}

fn matrix_residual(m: &SMatrix) -> String {
    if mat_is_zero(m) {
        "0".to_string()
    } else {
        render_matrix(m)
    }
}

/// `star(∂_i) + ∂_i` per component, asserted for the spatial derivatives,
/// and the spinor adjoint `D† + D`, reported.
pub fn antihermiticity_report(rep: &GammaRep) -> Vec<Outcome> {
    let del = &constants().del;
    let mut out = Vec::new();
    for (i, d) in del.iter().enumerate() {
        let residual = &d.star() + d;
        let id = format!("del-antihermitian[{i}]");
        if (1..4).contains(&i) {
            out.push(Outcome::zero_check(id, "derived-convention", residual));
        } else {
            out.push(Outcome::new(id, "derived-convention", Status::Reported, residual.to_string()));
        }
    }
    let mut dagger = MatrixMomentumOperator::default();
    for (i, d) in del.iter().enumerate() {
        let m = mat_dagger(&rep.coefficient(i));
        if !mat_is_zero(&m) {
            dagger = &dagger + &MatrixMomentumOperator::from_matrix(&m, &d.star());
        }
    }
    let residual = &dagger + &build_dirac(rep);
    out.push(Outcome::new(
        format!("dirac-adjoint[{}]", rep.gamma4),
        "derived-convention",
        Status::Reported,
        format!("D^dagger + D = {}", residual),
    ));
    out
}

/// `τ^i_c (aψ) - Σ_j f^i_j(a) τ^j_c ψ`
pub fn clifford_bimodule_residual(rep: &GammaRep, i: usize, a: &PositionElement, psi: &SpinorElement) -> SpinorElement {
    let images = clifford_images(rep);
    let lhs = images[i].apply(&psi.left_mul(a));
    let mut rhs = SpinorElement::zero();
    for (j, image) in images.iter().enumerate() {
        let fa = crate::action::act_f(i, j, a);
        if !fa.is_zero() {
            rhs = &rhs + &image.apply(psi).left_mul(&fa);
        }
    }
    &lhs - &rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(mu: usize) -> PositionElement {
        PositionElement::x(mu)
    }

    fn reps() -> Vec<GammaRep> {
        let l = ScalarValue::from_ratio(1, 2);
        vec![
            GammaRep::dirac(Gamma4Choice::Zero),
            GammaRep::dirac(Gamma4Choice::ScalarUnit(l.clone())),
            GammaRep::dirac(Gamma4Choice::Pseudoscalar(l)),
        ]
    }

    #[test]
    fn clifford_relations_hold() {
        for o in check_clifford_relations(&GammaRep::dirac(Gamma4Choice::Zero)) {
            assert!(o.passed(), "{}: {}", o.id, o.residual);
        }
    }

    #[test]
    fn dirac_annihilates_constants() {
        for rep in reps() {
            assert!(build_dirac(&rep).apply(&SpinorElement::constant([1, 2, 0, -1])).is_zero());
        }
    }

    #[test]
    fn dirac_square() {
        let reps = reps();
        let o = check_dirac_square(&reps[0]);
        assert_eq!(o.status, Status::Pass, "{}", o.residual);
        // pseudoscalar: cross terms cancel, residual is λ² ∂_4²
        let d = build_dirac(&reps[2]);
        let residual = &d.compose(&d) - &MatrixMomentumOperator::identity_times(&constants().boxk);
        let d4 = &constants().del[4];
        let expected = MatrixMomentumOperator::identity_times(&(d4 * d4).scale(&ScalarValue::from_ratio(1, 4)));
        assert_eq!(residual, expected);
        assert_eq!(check_dirac_square(&reps[1]).status, Status::Reported);
    }

    #[test]
    fn classical_limit_of_image() {
        let rep = GammaRep::dirac(Gamma4Choice::Zero);
        for mu in 0..4 {
            let lim = clifford_image(mu, &rep).kappa_expand(0);
            assert_eq!(lim, MatrixMomentumOperator::from_matrix(&rep.gamma[mu], &MomentumElement::one()));
        }
        let psi = SpinorElement::constant([1, 0, 2, 0]);
        for mu in 0..4 {
            assert_eq!(clifford_image(mu, &rep).apply(&psi), psi.apply_matrix(&rep.gamma[mu]));
        }
    }

    #[test]
    fn diagram_examples() {
        let mut psi2 = SpinorElement::constant([1, 0, 0, 1]);
        psi2.comp[2] = x(2);
        let w = PositionElement::label_wave(1);
        for rep in reps() {
            let psi = SpinorElement::constant([1, 0, 0, 0]);
            for (a, p) in [
                (PositionElement::one(), &psi),
                (x(0), &psi),
                (&x(1) * &x(0), &psi2),
                (&w * &x(3), &psi2),
            ] {
                let o = check_diagram(&rep, &a, p);
                assert!(o.passed(), "{} {}: {}", o.id, a, o.residual);
                for i in 0..DIM {
                    assert!(clifford_bimodule_residual(&rep, i, &a, p).is_zero());
                }
            }
        }
    }

    #[test]
    fn transposed_image_fails_off_diagonal() {
        let rep = GammaRep::dirac(Gamma4Choice::Zero);
        let mut psi = SpinorElement::zero();
        psi.comp[0] = x(1);
        let o = check_diagram_transposed(&rep, &x(0), &psi);
        assert_eq!(o.status, Status::Reported);
        assert_ne!(o.residual, "0");
    }

    #[test]
    fn antihermiticity_is_reported() {
        for o in antihermiticity_report(&GammaRep::dirac(Gamma4Choice::Zero)) {
            assert!(o.passed(), "{}: {}", o.id, o.residual);
        }
    }
}
