//! Verification suites: named groups of identity checks with seeded fuzz
//! inputs, run in parallel and reported in a fixed order.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::action::{
    act_derivative, derivative_operator_residual, hermiticity_residual, module_algebra_residual, verify_cross_relations,
};
use crate::dirac::{
    antihermiticity_report, check_clifford_relations, check_diagram, check_diagram_transposed, check_dirac_square,
    clifford_bimodule_residual, clifford_image, Gamma4Choice, GammaRep, MatrixMomentumOperator, SpinorElement,
};
use crate::config::GaugeFile;
use crate::error::{KminkError, Result};
use crate::eval::eval_str;
use crate::forms::{
    check_metric_centrality, check_tau4_definition, exterior_d, exterior_d2, leibniz_residual, star_form,
    verify_form_relations,
};
use crate::gauge::{
    bianchi_residual, check_curvature_routes, check_divergence_covariance, check_f_covariance,
    check_invariant_covariance, classical_limit, collapse_residual, covariance_fixtures, divergence, field_strength,
    gauge_transform, limit_fixtures, nabla_commutator_residual, unitary_fixtures, Convention, GaugeConfig,
};
use crate::hopf::{binary_residuals, unary_residuals, Residual};
use crate::metric::DIM;
use crate::minkowski::PositionElement;
use crate::momentum::{verify_box_identities, verify_f_identities, MomentumElement};
use crate::oracle::verify_plane_waves;
use crate::random::Generator;
use crate::report::{Outcome, Record, Status, VerificationReport};
use crate::scalar::ScalarValue;

pub const SUITES: [&str; 7] = ["hopf", "action", "calculus", "dirac", "gauge", "limit", "all"];

/// Fuzz sample counts.
pub const PAIRS: usize = 100;
pub const SAMPLES: usize = 50;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub max_degree: u32,
    /// `∂_4` coefficients exercised by the Dirac suite.
    pub gamma4: Vec<Gamma4Choice>,
}

impl SuiteOptions {
    pub fn new(seed: u64, max_degree: u32) -> Self {
        SuiteOptions { seed, max_degree, gamma4: all_gamma4_choices() }
    }
}

pub fn all_gamma4_choices() -> Vec<Gamma4Choice> {
    let lambda = ScalarValue::from_ratio(1, 2);
    vec![Gamma4Choice::Zero, Gamma4Choice::ScalarUnit(lambda.clone()), Gamma4Choice::Pseudoscalar(lambda)]
}

type Check = Box<dyn Fn(&mut Generator) -> Vec<Outcome> + Send + Sync>;

struct Task {
    name: String,
    check: Check,
}

fn task(name: impl Into<String>, check: impl Fn(&mut Generator) -> Vec<Outcome> + Send + Sync + 'static) -> Task {
    Task { name: name.into(), check: Box::new(check) }
}

fn task_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a of the task name mixed with the suite seed
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Collapses many sample residuals into one outcome per check name.
fn aggregate(id: &str, tag: &str, samples: usize, failures: Vec<String>) -> Outcome {
    match failures.first() {
        None => Outcome::new(id, tag, Status::Pass, "0"),
        Some(first) => Outcome::new(
            id,
            tag,
            Status::Fail,
            format!("{} of {} samples failed; first: {}", failures.len(), samples, first),
        ),
    }
}

fn fuzz(
    id: &str,
    tag: &str,
    samples: usize,
    gen: &mut Generator,
    mut residual: impl FnMut(&mut Generator) -> Option<String>,
) -> Outcome {
    let failures: Vec<String> = (0..samples).filter_map(|_| residual(gen)).collect();
    aggregate(id, tag, samples, failures)
}

fn nonzero<T: ToString>(is_zero: bool, residual: T) -> Option<String> {
    (!is_zero).then(|| residual.to_string())
}

fn hopf_outcomes(prefix: &str, tag: &str, samples: usize, residuals: impl Iterator<Item = Vec<Residual>>) -> Vec<Outcome> {
    let mut names: Vec<&'static str> = Vec::new();
    let mut failures: Vec<Vec<String>> = Vec::new();
    for sample in residuals {
        for (name, r) in sample {
            let idx = match names.iter().position(|n| *n == name) {
                Some(i) => i,
                None => {
                    names.push(name);
                    failures.push(Vec::new());
                    names.len() - 1
                }
            };
            if !r.is_empty() {
                failures[idx].push(r);
            }
        }
    }
    names
        .iter()
        .zip(failures)
        .map(|(n, f)| aggregate(&format!("{prefix}-{n}"), tag, samples, f))
        .collect()
}

fn hopf_tasks() -> Vec<Task> {
    vec![
        task("f-identities", |_| verify_f_identities()),
        task("box-identities", |_| verify_box_identities()),
        task("plane-waves", |_| verify_plane_waves()),
        task("position-hopf", |gen| {
            let elems: Vec<PositionElement> = (0..SAMPLES).map(|_| gen.position(true)).collect();
            let mut out = hopf_outcomes("position", "1.4", SAMPLES, elems.iter().map(unary_residuals));
            let pairs: Vec<_> = (0..SAMPLES).map(|_| (gen.position(true), gen.position(true))).collect();
            out.extend(hopf_outcomes("position", "1.4", SAMPLES, pairs.iter().map(|(a, b)| binary_residuals(a, b))));
            out
        }),
        task("momentum-hopf", |gen| {
            let elems: Vec<MomentumElement> = (0..SAMPLES).map(|_| &gen.momentum() * &gen.momentum()).collect();
            let mut out = hopf_outcomes("momentum", "1.5", SAMPLES, elems.iter().map(unary_residuals));
            let pairs: Vec<_> = (0..SAMPLES).map(|_| (gen.momentum(), gen.momentum())).collect();
            out.extend(hopf_outcomes("momentum", "1.5", SAMPLES, pairs.iter().map(|(a, b)| binary_residuals(a, b))));
            out
        }),
        task("associativity", |gen| {
            vec![fuzz("associativity-fuzz", "1.2", PAIRS, gen, |g| {
                let (a, b, c) = (g.position(true), g.position(true), g.position(true));
                let r = &a.normal_mul(&b).normal_mul(&c) - &a.normal_mul(&b.normal_mul(&c));
                nonzero(r.is_zero(), r)
            })]
        }),
        task("commutation", |_| {
            let x = PositionElement::x;
            let ik = PositionElement::scalar(&ScalarValue::i() * &ScalarValue::kappa_pow(-1));
            let mut out: Vec<Outcome> = (1..4)
                .map(|m| {
                    let r = &x(0).commutator(&x(m)) - &ik.normal_mul(&x(m));
                    Outcome::zero_check(format!("coordinate-commutator[x0,x{m}]"), "1.2", r)
                })
                .collect();
            for m in 1..4 {
                for n in (m + 1)..4 {
                    out.push(Outcome::zero_check(format!("coordinate-commutator[x{m},x{n}]"), "1.2", x(m).commutator(&x(n))));
                }
            }
            out
        }),
    ]
}

fn action_tasks() -> Vec<Task> {
    vec![
        task("cross-relations", |_| verify_cross_relations()),
        task("derivative-values", |_| {
            let x = PositionElement::x;
            let mut out = Vec::new();
            for i in 0..DIM {
                for mu in 0..4 {
                    let expected = if i == mu { PositionElement::one() } else { PositionElement::zero() };
                    out.push(Outcome::zero_check(
                        format!("del{i}(x{mu})"),
                        "2.1",
                        &act_derivative(i, &x(mu)) - &expected,
                    ));
                }
            }
            let expected = PositionElement::scalar(&ScalarValue::i() * &ScalarValue::kappa_pow(-1)).scale(&ScalarValue::from_int(-1));
            out.push(Outcome::zero_check("del4(x0^2)", "2.1", &act_derivative(4, &x(0).pow(2)) - &expected));
            out
        }),
        task("module-algebra", |gen| {
            vec![fuzz("module-algebra-fuzz", "1.22", PAIRS, gen, |g| {
                let p = g.momentum();
                let (a, b) = (g.position(true), g.position(true));
                let r = module_algebra_residual(&p, &a, &b);
                nonzero(r.is_zero(), r)
            })]
        }),
        task("derivative-operator", |gen| {
            vec![fuzz("derivative-operator-fuzz", "2.5", SAMPLES, gen, |g| {
                let a = g.position(true);
                let i = g.below(DIM);
                let r = derivative_operator_residual(i, &a);
                nonzero(r.is_zero(), r)
            })]
        }),
        task("hermiticity", |gen| {
            vec![fuzz("hermiticity-fuzz", "1.28", SAMPLES, gen, |g| {
                let a = g.position(true);
                let (i, j) = (g.below(DIM), g.below(DIM));
                let r = hermiticity_residual(i, j, &a);
                nonzero(r.is_zero(), r)
            })]
        }),
    ]
}

fn calculus_tasks() -> Vec<Task> {
    vec![
        task("form-relations", |_| verify_form_relations()),
        task("tau4", |_| check_tau4_definition()),
        task("leibniz", |gen| {
            vec![fuzz("leibniz-fuzz", "2.3", PAIRS, gen, |g| {
                let (a, b) = (g.position(true), g.position(true));
                let r = leibniz_residual(&a, &b);
                nonzero(r.is_zero(), r)
            })]
        }),
        task("bimodule", |gen| {
            vec![
                fuzz("bimodule-associativity-fuzz", "1.22", PAIRS, gen, |g| {
                    let w = g.one_form(true);
                    let (a, b) = (g.position(true), g.position(true));
                    let r = &w.right_mul(&a).right_mul(&b) - &w.right_mul(&a.normal_mul(&b));
                    nonzero(r.is_zero(), r)
                }),
                fuzz("bimodule-left-right-fuzz", "1.21", SAMPLES, gen, |g| {
                    let w = g.one_form(true);
                    let (a, b) = (g.position(true), g.position(true));
                    let r = &w.left_mul(&a).right_mul(&b) - &w.right_mul(&b).left_mul(&a);
                    nonzero(r.is_zero(), r)
                }),
            ]
        }),
        task("d-squared", |gen| {
            vec![fuzz("d-squared-fuzz", "1.16", SAMPLES, gen, |g| {
                let r = exterior_d2(&exterior_d(&g.position(true)));
                nonzero(r.is_zero(), r)
            })]
        }),
        task("metric-centrality", |gen| {
            let mut out = vec![
                check_metric_centrality(&PositionElement::one()),
                check_metric_centrality(&PositionElement::x(0)),
            ];
            out.push(fuzz("metric-centrality-fuzz", "1.18", SAMPLES, gen, |g| {
                let o = check_metric_centrality(&g.position(true));
                (!o.passed()).then_some(o.residual)
            }));
            out
        }),
        task("form-star", |gen| {
            vec![fuzz("form-star-involution-fuzz", "1.27", SAMPLES, gen, |g| {
                let w = g.one_form(true);
                let r = &star_form(&star_form(&w)) - &w;
                nonzero(r.is_zero(), r)
            })]
        }),
    ]
}

fn dirac_tasks(choices: &[Gamma4Choice]) -> Vec<Task> {
    let mut tasks = vec![task("clifford", |_| check_clifford_relations(&GammaRep::dirac(Gamma4Choice::Zero)))];
    for choice in choices {
        let rep = GammaRep::dirac(choice.clone());
        let label = choice.to_string();
        let r = rep.clone();
        tasks.push(task(format!("dirac-square[{label}]"), move |_| vec![check_dirac_square(&r)]));
        let r = rep.clone();
        let l = label.clone();
        tasks.push(task(format!("diagram[{label}]"), move |gen| {
            let mut out = vec![check_diagram(&r, &PositionElement::x(0), &SpinorElement::constant([1, 0, 0, 0]))];
            out.push(fuzz(&format!("diagram-fuzz[{l}]"), "0.8", SAMPLES, gen, |g| {
                let a = g.position(true);
                let psi = g.spinor(true);
                let o = check_diagram(&r, &a, &psi);
                (!o.passed()).then_some(o.residual)
            }));
            let mut psi = SpinorElement::zero();
            psi.comp[0] = PositionElement::x(1);
            out.push(check_diagram_transposed(&r, &PositionElement::x(0), &psi));
            out
        }));
        let r = rep.clone();
        let l = label.clone();
        tasks.push(task(format!("clifford-bimodule[{label}]"), move |gen| {
            vec![fuzz(&format!("clifford-bimodule-fuzz[{l}]"), "1.21", SAMPLES, gen, |g| {
                let a = g.position(true);
                let psi = g.spinor(true);
                let i = g.below(DIM);
                let res = clifford_bimodule_residual(&r, i, &a, &psi);
                nonzero(res.is_zero(), res)
            })]
        }));
        let r = rep.clone();
        tasks.push(task(format!("antihermiticity[{label}]"), move |_| antihermiticity_report(&r)));
    }
    tasks.push(task("clifford-limit", |_| {
        let rep = GammaRep::dirac(Gamma4Choice::Zero);
        (0..4)
            .map(|mu| {
                let lim = clifford_image(mu, &rep).kappa_expand(0);
                let expected = MatrixMomentumOperator::from_matrix(&rep.gamma[mu], &MomentumElement::one());
                Outcome::zero_check(format!("clifford-image-limit[{mu}]"), "2.10", &lim - &expected)
            })
            .collect()
    }));
    tasks
}

fn gauge_tasks() -> Vec<Task> {
    let mut tasks = Vec::new();
    for (clabel, cfg) in covariance_fixtures() {
        let c = cfg.clone();
        let l = clabel.clone();
        tasks.push(task(format!("curvature[{clabel}]"), move |_| {
            check_curvature_routes(&c)
                .into_iter()
                .map(|o| Outcome { id: format!("{}[{}]", o.id, l), ..o })
                .collect()
        }));
        for (ulabel, u) in unitary_fixtures() {
            let label = format!("{clabel};U={ulabel}");
            let (c, u2, l) = (cfg.clone(), u.clone(), label.clone());
            tasks.push(task(format!("F-cov[{label}]"), move |_| vec![check_f_covariance(&c, &u2, Convention::Literal, &l)]));
            let (c, u2, l) = (cfg.clone(), u.clone(), label.clone());
            tasks.push(task(format!("div-cov[{label}]"), move |_| {
                vec![check_divergence_covariance(&c, &u2, Convention::Literal, &l)]
            }));
            let (c, u2, l) = (cfg.clone(), u, label.clone());
            tasks.push(task(format!("inv-cov[{label}]"), move |_| {
                check_invariant_covariance(&c, &u2, Convention::Literal, &l)
            }));
        }
    }
    tasks.push(task("pure-gauge", |_| {
        let mut out = Vec::new();
        for (ulabel, u) in unitary_fixtures() {
            for g in [1, 2] {
                let zero = GaugeConfig::zero(ScalarValue::from_int(g));
                let f = gauge_transform(&zero, &u).map(|t| field_strength(&t, Convention::Charged));
                let o = match f {
                    Ok(f) => Outcome::zero_check(format!("pure-gauge-flat[U={ulabel};g={g}]"), "3.4", f),
                    Err(e) => Outcome::new(format!("pure-gauge-flat[U={ulabel};g={g}]"), "3.4", Status::Fail, e.to_string()),
                };
                out.push(o);
            }
        }
        out
    }));
    tasks.push(task("charged-convention", |_| {
        let (label, mut cfg) = covariance_fixtures().swap_remove(1);
        cfg.charge = ScalarValue::from_int(2);
        let mut out = vec![check_f_covariance(&cfg, &crate::gauge::UnitaryElement::wave(1), Convention::Charged, &format!("{label};g=2;charged"))];
        for o in &mut out {
            o.tag = "derived-convention".into();
        }
        let literal = check_f_covariance(&cfg, &crate::gauge::UnitaryElement::wave(1), Convention::Literal, &format!("{label};g=2;printed"));
        out.push(Outcome { status: Status::Reported, ..literal });
        out.extend(check_curvature_routes(&cfg).into_iter().map(|o| Outcome { id: format!("{}[g=2]", o.id), ..o }));
        out
    }));
    tasks.push(task("nabla-commutator", |gen| {
        let fixtures = covariance_fixtures();
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                out.push(fuzz(&format!("nabla-commutator-fuzz[{i},{j}]"), "3.10", SAMPLES, gen, |g| {
                    let cfg = &fixtures[g.below(fixtures.len())].1;
                    let a = g.position(false);
                    let r = nabla_commutator_residual(cfg, i, j, &a);
                    nonzero(r.is_zero(), r)
                }));
            }
        }
        out
    }));
    tasks.push(task("bianchi", |gen| {
        let fixtures = covariance_fixtures();
        vec![fuzz("bianchi-fuzz", "3.11", SAMPLES, gen, |g| {
            let cfg = &fixtures[g.below(fixtures.len())].1;
            let a = g.position(false);
            let mut triple = [0usize; 3];
            for t in &mut triple {
                *t = g.below(DIM);
            }
            let r = bianchi_residual(cfg, triple[0], triple[1], triple[2], &a);
            nonzero(r.is_zero(), r)
        })]
    }));
    tasks.push(task("collapse", |_| {
        let mut out = Vec::new();
        for (ulabel, u) in unitary_fixtures() {
            let mut failures = Vec::new();
            for (i, j, p, q) in [(0, 1, 0, 1), (0, 4, 4, 0), (1, 2, 1, 2), (4, 4, 4, 4), (0, 0, 3, 3), (2, 4, 2, 4)] {
                let r = collapse_residual(&u, i, j, p, q);
                if !r.is_zero() {
                    failures.push(r.to_string());
                }
            }
            out.push(aggregate(&format!("unitary-collapse[U={ulabel}]"), "3.18", 6, failures));
        }
        out
    }));
    tasks.push(task("field-equation", |_| {
        covariance_fixtures()
            .into_iter()
            .map(|(label, cfg)| {
                let div = divergence(&cfg, Convention::Literal);
                let rendered: Vec<String> = div.iter().enumerate().map(|(k, d)| format!("[{k}]: {d}")).collect();
                Outcome::new(format!("field-equation-residual[{label}]"), "3.14", Status::Reported, rendered.join("; "))
            })
            .collect()
    }));
    tasks
}

fn limit_tasks() -> Vec<Task> {
    vec![task("classical-limit", |_| {
        limit_fixtures()
            .into_iter()
            .map(|(label, cfg)| {
                classical_limit(&cfg, &label)
                    .unwrap_or_else(|e| Outcome::new(format!("classical-limit[{label}]"), "3.25", Status::Fail, e.to_string()))
            })
            .collect()
    })]
}

fn tasks_for(name: &str, opts: &SuiteOptions) -> Result<Vec<Task>> {
    Ok(match name {
        "hopf" => hopf_tasks(),
        "action" => action_tasks(),
        "calculus" => calculus_tasks(),
        "dirac" => dirac_tasks(&opts.gamma4),
        "gauge" => gauge_tasks(),
        "limit" => limit_tasks(),
        "all" => {
            let mut all = Vec::new();
            for s in &SUITES[..6] {
                all.extend(tasks_for(s, opts)?);
            }
            all
        }
        other => return Err(KminkError::UnknownSuite(other.to_string())),
    })
}

fn thread_pool() -> Option<rayon::ThreadPool> {
    let n: usize = std::env::var("KMINK_THREADS").ok()?.parse().ok()?;
    rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().ok()
}

/// Runs every check of the suite; records keep task order regardless of
/// scheduling.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<VerificationReport> {
    let tasks = tasks_for(name, opts)?;
    let run = || -> Vec<(Vec<Outcome>, Duration)> {
        tasks
            .par_iter()
            .map(|t| {
                let mut gen = Generator::new(task_seed(opts.seed, &t.name), opts.max_degree);
                let start = Instant::now();
                let outcomes = (t.check)(&mut gen);
                (outcomes, start.elapsed())
            })
            .collect()
    };
    let results = match thread_pool() {
        Some(pool) => pool.install(run),
        None => run(),
    };
    let mut report = VerificationReport::new(name);
    for (outcomes, elapsed) in results {
        let share = elapsed / outcomes.len().max(1) as u32;
        report.records.extend(outcomes.into_iter().map(|outcome| Record { outcome, wall_time: share }));
    }
    Ok(report)
}

/// Parses `zero`, `unit:<expr>` or `gamma5:<expr>` with a nonzero scalar.
pub fn parse_gamma4(text: &str) -> Result<Gamma4Choice> {
    let text = text.trim();
    if text == "zero" {
        return Ok(Gamma4Choice::Zero);
    }
    let bad = || KminkError::Type(format!("expected zero, unit:<scalar> or gamma5:<scalar>, got `{}`", text));
    let (kind, lambda) = text.split_once(':').ok_or_else(bad)?;
    let value = eval_str(lambda)?;
    let lambda = value.as_position().ok().and_then(|p| p.as_scalar()).filter(|s| !s.is_zero()).ok_or_else(bad)?;
    match kind.trim() {
        "unit" => Ok(Gamma4Choice::ScalarUnit(lambda)),
        "gamma5" => Ok(Gamma4Choice::Pseudoscalar(lambda)),
        _ => Err(bad()),
    }
}

/// Curvature routes and covariance of a user configuration under each of
/// its unitaries (the plane-wave fixtures when none are listed).
pub fn verify_gauge_file(file: &GaugeFile, conv: Convention) -> VerificationReport {
    let unitaries = if file.unitaries.is_empty() { unitary_fixtures() } else { file.unitaries.clone() };
    let cfg = &file.config;
    let mut jobs: Vec<Box<dyn Fn() -> Vec<Outcome> + Send + Sync + '_>> =
        vec![Box::new(move || check_curvature_routes(cfg))];
    for (name, u) in &unitaries {
        jobs.push(Box::new(move || vec![check_f_covariance(cfg, u, conv, name)]));
        jobs.push(Box::new(move || vec![check_divergence_covariance(cfg, u, conv, name)]));
        jobs.push(Box::new(move || check_invariant_covariance(cfg, u, conv, name)));
    }
    let run = || -> Vec<(Vec<Outcome>, Duration)> {
        jobs.par_iter()
            .map(|job| {
                let start = Instant::now();
                (job(), start.elapsed())
            })
            .collect()
    };
    let results = match thread_pool() {
        Some(pool) => pool.install(run),
        None => run(),
    };
    let mut report = VerificationReport::new("gauge-config");
    for (outcomes, elapsed) in results {
        let share = elapsed / outcomes.len().max(1) as u32;
        report.records.extend(outcomes.into_iter().map(|outcome| Record { outcome, wall_time: share }));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(matches!(run_suite("nope", &SuiteOptions::new(1, 1)), Err(KminkError::UnknownSuite(_))));
    }

    #[test]
    fn gamma4_flags() {
        assert_eq!(parse_gamma4("zero").unwrap(), Gamma4Choice::Zero);
        assert_eq!(parse_gamma4("unit:1/2").unwrap(), Gamma4Choice::ScalarUnit(ScalarValue::from_ratio(1, 2)));
        assert_eq!(parse_gamma4("gamma5: -1").unwrap(), Gamma4Choice::Pseudoscalar(ScalarValue::from_int(-1)));
        for bad in ["unit:0", "gamma5:x0", "half:1", "unit"] {
            assert!(parse_gamma4(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn limit_suite_passes_and_is_deterministic() {
        let opts = SuiteOptions::new(3, 1);
        let a = run_suite("limit", &opts).unwrap();
        let b = run_suite("limit", &opts).unwrap();
        assert!(a.all_passed());
        assert_eq!(a.to_json_lines(false), b.to_json_lines(false));
    }
}
