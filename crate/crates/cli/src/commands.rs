use std::path::PathBuf;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use su2geo::fields::{right_invariant_field, FrameField};
use su2geo::foliation::{
    homogeneity_certificate, is_metric_foliation, CertificateOutcome, FoliationReport,
    InhomogeneousFoliation,
};
use su2geo::geodesic::{
    berger_geodesic, integrate_geodesic, verify_period_shift, verify_period_shift_integrated,
    BergerGeodesicSpec, GeodesicState, IntegratorConfig, Trajectory,
};
use su2geo::group::{hopf_flow, AlgebraVector, FdConfig, GroupPoint};
use num_traits::Zero;
use su2geo::milnor::{christoffel, classify as classify_metric, FrameVec, IsometryClass, MilnorTriple};
use su2geo::sample::random_points_where;
use su2geo::scalar::{parse_rational, Rational, Scalar};

use crate::output::{csv_table, emit, fmt_f64, to_json_pretty};
use crate::{ClassifyArgs, CliError, FieldRunArgs, Format, GeodesicArgs, SweepArgs};

fn parse_triple(x: &str, y: &str, z: &str) -> Result<MilnorTriple<Rational>, CliError> {
    let triple = MilnorTriple::new_rational(
        parse_rational(x)?,
        parse_rational(y)?,
        parse_rational(z)?,
    )?;
    Ok(triple)
}

// ---------------------------------------------------------------------------
// classify

#[derive(Serialize)]
struct GammaEntry {
    i: usize,
    j: usize,
    k: usize,
    value: String,
    value_float: f64,
}

#[derive(Serialize)]
struct ClassifyReport {
    input: [String; 3],
    class: &'static str,
    eps: Option<String>,
    eps_float: Option<f64>,
    canonical: [String; 3],
    canonical_float: [f64; 3],
    christoffel: Vec<GammaEntry>,
}

fn classify_report(m: &MilnorTriple<Rational>) -> ClassifyReport {
    let classification = classify_metric(m);
    let (class, eps) = match &classification.class {
        IsometryClass::RoundSphere => ("round-sphere", None),
        IsometryClass::BergerHomothety { eps } => ("berger-homothety", Some(eps.clone())),
        IsometryClass::NonNaturallyReductive => ("non-naturally-reductive", None),
    };
    let canonical = classification.canonical;
    let table = christoffel(m);
    let christoffel = table
        .nonzero()
        .into_iter()
        .map(|(i, j, k, value)| GammaEntry {
            i: i + 1,
            j: j + 1,
            k: k + 1,
            value_float: value.to_f64_lossy(),
            value: value.to_string(),
        })
        .collect();
    ClassifyReport {
        input: [m.x.to_string(), m.y.to_string(), m.z.to_string()],
        class,
        eps_float: eps.as_ref().map(|e| e.to_f64_lossy()),
        eps: eps.map(|e| e.to_string()),
        canonical: [
            canonical.x.to_string(),
            canonical.y.to_string(),
            canonical.z.to_string(),
        ],
        canonical_float: [
            canonical.x.to_f64_lossy(),
            canonical.y.to_f64_lossy(),
            canonical.z.to_f64_lossy(),
        ],
        christoffel,
    }
}

pub fn classify(args: ClassifyArgs) -> Result<(), CliError> {
    let m = parse_triple(&args.x, &args.y, &args.z)?;
    let report = classify_report(&m);
    let content = match args.format {
        Format::Json => to_json_pretty(&report)?,
        Format::Csv => {
            let mut rows = vec![
                vec!["class".into(), report.class.into()],
                vec!["canonical".into(), report.canonical.join(" ")],
            ];
            if let Some(eps) = &report.eps {
                rows.push(vec!["eps".into(), eps.clone()]);
            }
            for g in &report.christoffel {
                rows.push(vec![
                    format!("gamma_{}{}{}", g.i, g.j, g.k),
                    g.value.clone(),
                ]);
            }
            csv_table(&["key", "value"], &rows)?
        }
        Format::Text => {
            let mut s = format!(
                "structure constants ({}, {}, {})\nisometry class: {}\n",
                report.input[0], report.input[1], report.input[2], report.class
            );
            if let Some(eps) = &report.eps {
                s.push_str(&format!(
                    "berger parameter: eps = {eps} ({})\n",
                    fmt_f64(report.eps_float.unwrap())
                ));
            }
            s.push_str(&format!("canonical triple: ({})\n", report.canonical.join(", ")));
            s.push_str("nonzero Christoffel symbols:\n");
            for g in &report.christoffel {
                s.push_str(&format!("  gamma_{}{}^{} = {}\n", g.i, g.j, g.k, g.value));
            }
            s
        }
    };
    emit(&args.out, &content)
}

// ---------------------------------------------------------------------------
// geodesic

#[derive(Serialize)]
struct GeodesicReport {
    eps: f64,
    theta: f64,
    mode: &'static str,
    notice: Option<String>,
    period: f64,
    shift: f64,
    step: f64,
    t_end: f64,
    max_closed_vs_integrated: f64,
    period_shift_residual_closed: Option<f64>,
    period_shift_residual_integrated: Option<f64>,
    trajectory_rows: usize,
    trajectory_out: Option<String>,
}

fn trajectory_csv(
    traj: &Trajectory,
    samples: usize,
    hopf: bool,
) -> Result<(String, Vec<(f64, GeodesicState)>), CliError> {
    let n = samples.max(2).min(traj.len());
    let picked: Vec<(f64, GeodesicState)> = (0..n)
        .map(|k| {
            let idx = if n > 1 { k * (traj.len() - 1) / (n - 1) } else { 0 };
            (traj.times[idx], traj.states[idx].clone())
        })
        .collect();
    let mut headers = vec!["t", "qw", "qx", "qy", "qz", "a1", "a2", "a3"];
    if hopf {
        headers.extend_from_slice(&["hopf_x", "hopf_y", "hopf_z"]);
    }
    let rows: Vec<Vec<String>> = picked
        .iter()
        .map(|(t, s)| {
            let p = &s.point;
            let v = &s.body_velocity;
            let mut row = vec![
                fmt_f64(*t),
                fmt_f64(p.w),
                fmt_f64(p.x),
                fmt_f64(p.y),
                fmt_f64(p.z),
                fmt_f64(v.c[0]),
                fmt_f64(v.c[1]),
                fmt_f64(v.c[2]),
            ];
            if hopf {
                let h = p.hopf_projection();
                row.extend(h.iter().map(|x| fmt_f64(*x)));
            }
            row
        })
        .collect();
    Ok((csv_table(&headers, &rows)?, picked))
}

pub fn geodesic(args: GeodesicArgs) -> Result<(), CliError> {
    if !(args.eps > 0.0) || args.eps == 1.0 {
        return Err(CliError::validation(format!(
            "--eps must be positive and different from 1, got {}",
            args.eps
        )));
    }
    if !(0.0..=std::f64::consts::PI).contains(&args.theta) {
        return Err(CliError::validation(format!(
            "--theta must lie in [0, pi], got {}",
            args.theta
        )));
    }
    let endpoint = args.theta < 1e-12 || (std::f64::consts::PI - args.theta) < 1e-12;

    let (mode, notice, period, shift, velocity): (_, _, f64, f64, FrameVec<f64>) = if endpoint {
        let sign = if args.theta < 1e-12 { 1.0 } else { -1.0 };
        (
            "hopf-orbit",
            Some("theta at an endpoint: the geodesic is a Hopf-flow orbit".to_string()),
            2.0 * std::f64::consts::PI * args.eps,
            0.0,
            FrameVec::new(0.0, 0.0, sign),
        )
    } else {
        let spec = BergerGeodesicSpec::new(args.eps, args.theta)?;
        (
            "closed-form",
            None,
            spec.period,
            spec.shift,
            spec.initial_velocity(),
        )
    };

    let m = MilnorTriple::berger(args.eps)?;
    let cfg = IntegratorConfig::with_step(args.step);
    let s0 = GeodesicState::new(GroupPoint::IDENTITY, velocity.clone());
    let traj = integrate_geodesic(&m, &s0, args.t_end, &cfg)?;
    let (csv, picked) = trajectory_csv(&traj, args.samples.max(1), args.hopf)?;

    let closed_point = |t: f64| -> GroupPoint {
        if endpoint {
            hopf_flow(args.eps, velocity.c[2] * t, &GroupPoint::IDENTITY)
        } else {
            let spec = BergerGeodesicSpec::new(args.eps, args.theta).expect("validated");
            berger_geodesic(&spec, t)
        }
    };
    let max_dev = picked
        .iter()
        .fold(0.0f64, |acc, (t, s)| acc.max(s.point.distance(&closed_point(*t))));

    let (residual_closed, residual_integrated) = if endpoint {
        (None, None)
    } else {
        let times: Vec<f64> = (0..100)
            .map(|i| -period + 3.0 * period * i as f64 / 99.0)
            .collect();
        let closed = verify_period_shift(args.eps, args.theta, &times)?;
        let integrated =
            verify_period_shift_integrated(args.eps, args.theta, period, 10, &cfg)?;
        (Some(closed), Some(integrated))
    };

    let trajectory_out = match &args.out {
        Some(path) => {
            emit(&args.out, &csv)?;
            Some(path.display().to_string())
        }
        None => None,
    };

    let report = GeodesicReport {
        eps: args.eps,
        theta: args.theta,
        mode,
        notice,
        period,
        shift,
        step: args.step,
        t_end: args.t_end,
        max_closed_vs_integrated: max_dev,
        period_shift_residual_closed: residual_closed,
        period_shift_residual_integrated: residual_integrated,
        trajectory_rows: picked.len(),
        trajectory_out,
    };
    let content = match args.format {
        Format::Json => to_json_pretty(&report)?,
        Format::Csv => csv, // the trajectory itself
        Format::Text => {
            let mut s = format!(
                "mode: {}\nperiod T = {}\nshift S = {}\nclosed-form vs integrated (step {}): {}\n",
                report.mode,
                fmt_f64(report.period),
                fmt_f64(report.shift),
                fmt_f64(report.step),
                fmt_f64(report.max_closed_vs_integrated),
            );
            if let Some(r) = report.period_shift_residual_closed {
                s.push_str(&format!("period-shift residual (closed form): {}\n", fmt_f64(r)));
            }
            if let Some(r) = report.period_shift_residual_integrated {
                s.push_str(&format!("period-shift residual (integrated): {}\n", fmt_f64(r)));
            }
            if let Some(n) = &report.notice {
                s.push_str(&format!("note: {n}\n"));
            }
            s
        }
    };
    // The trajectory already went to --out for csv format.
    if args.format == Format::Csv && args.out.is_some() {
        return Ok(());
    }
    println!("{content}");
    Ok(())
}

// ---------------------------------------------------------------------------
// foliation

#[derive(Serialize)]
struct BuildReport {
    input: [String; 3],
    v2: f64,
    v3: f64,
    v2_squared: String,
    v3_squared: String,
    key_identity_residual: String,
    totally_geodesic_residuals: [String; 3],
    is_metric: bool,
    mean_curvature_e1: f64,
    d_omega_23: f64,
    d_omega_23_exact: String,
    homogeneous: bool,
    verdict: &'static str,
}

pub fn foliation_build(
    x: &str,
    y: &str,
    z: &str,
    format: Format,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let m = parse_triple(x, y, z)?;
    let fol = InhomogeneousFoliation::new(m)?;
    let residuals = fol.residuals_exact();
    let is_metric = residuals.iter().all(Zero::is_zero);
    let d_omega = fol.d_omega_exact(1, 2);
    let homogeneous = d_omega.is_zero();
    let report = BuildReport {
        input: [x.trim().into(), y.trim().into(), z.trim().into()],
        v2: fol.v2(),
        v3: fol.v3(),
        v2_squared: fol.v2_squared().to_string(),
        v3_squared: fol.v3_squared().to_string(),
        key_identity_residual: fol.key_identity_residual().to_string(),
        totally_geodesic_residuals: [
            residuals[0].to_string(),
            residuals[1].to_string(),
            residuals[2].to_string(),
        ],
        is_metric,
        mean_curvature_e1: fol.mean_curvature_exact().c[0].to_f64(),
        d_omega_23: d_omega.to_f64(),
        d_omega_23_exact: d_omega.to_string(),
        homogeneous,
        verdict: if is_metric && !homogeneous {
            "metric foliation, not homogeneous"
        } else if is_metric {
            "metric foliation, homogeneous"
        } else {
            "not a metric foliation"
        },
    };
    let content = match format {
        Format::Json => to_json_pretty(&report)?,
        Format::Csv => {
            let rows = vec![
                vec!["v2".into(), fmt_f64(report.v2)],
                vec!["v3".into(), fmt_f64(report.v3)],
                vec!["v2_squared".into(), report.v2_squared.clone()],
                vec!["v3_squared".into(), report.v3_squared.clone()],
                vec!["is_metric".into(), report.is_metric.to_string()],
                vec!["d_omega_23".into(), fmt_f64(report.d_omega_23)],
                vec!["homogeneous".into(), report.homogeneous.to_string()],
                vec!["verdict".into(), report.verdict.into()],
            ];
            csv_table(&["key", "value"], &rows)?
        }
        Format::Text => format!(
            "v2 = {} (v2^2 = {})\nv3 = {} (v3^2 = {})\ntotally geodesic residuals: [{}, {}, {}]\nd_omega(E2,E3) = {} (exact {})\nverdict: {}\n",
            fmt_f64(report.v2),
            report.v2_squared,
            fmt_f64(report.v3),
            report.v3_squared,
            report.totally_geodesic_residuals[0],
            report.totally_geodesic_residuals[1],
            report.totally_geodesic_residuals[2],
            fmt_f64(report.d_omega_23),
            report.d_omega_23_exact,
            report.verdict,
        ),
    };
    emit(&out, &content)
}

enum NamedField {
    Axis(usize),
    Theorem1,
    Killing { v: [f64; 3], c: f64 },
}

fn parse_field(spec: &str) -> Result<NamedField, CliError> {
    match spec {
        "y1" => Ok(NamedField::Axis(0)),
        "y2" => Ok(NamedField::Axis(1)),
        "y3" => Ok(NamedField::Axis(2)),
        "theorem1" | "inhomogeneous" => Ok(NamedField::Theorem1),
        other => {
            let Some(rest) = other.strip_prefix("killing:") else {
                return Err(CliError::validation(format!(
                    "unknown field {other:?}; expected y1, y2, y3, theorem1, or killing:v1,v2,v3,c"
                )));
            };
            let parts: Vec<f64> = rest
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::validation(format!("bad killing coefficients: {e}")))?;
            if parts.len() != 4 {
                return Err(CliError::validation(
                    "killing fields take four coefficients: v1,v2,v3,c",
                ));
            }
            Ok(NamedField::Killing {
                v: [parts[0], parts[1], parts[2]],
                c: parts[3],
            })
        }
    }
}

#[derive(Serialize)]
struct FieldRunReport {
    field: String,
    eps: Option<f64>,
    triple: Option<[String; 3]>,
    seed: u64,
    tolerance: f64,
    exact_residuals: Option<[String; 3]>,
    check: Option<FoliationReport>,
    certificate: Option<CertificateOutcome>,
    verdict: String,
}

pub fn foliation_field_run(args: FieldRunArgs, certify: bool) -> Result<(), CliError> {
    let named = parse_field(&args.field)?;
    if !(args.tol > 0.0) {
        return Err(CliError::validation(format!("--tol must be positive, got {}", args.tol)));
    }

    let mut exact_residuals = None;
    let mut triple_strings = None;
    let (metric, field, samples): (MilnorTriple<f64>, FrameField, Vec<GroupPoint>) = match named {
        NamedField::Theorem1 => {
            if args.triple.len() != 3 {
                return Err(CliError::validation(
                    "the theorem1 field needs three structure constants: x y z",
                ));
            }
            let m = parse_triple(&args.triple[0], &args.triple[1], &args.triple[2])?;
            let fol = InhomogeneousFoliation::new(m.clone())?;
            let r = fol.residuals_exact();
            exact_residuals = Some([r[0].to_string(), r[1].to_string(), r[2].to_string()]);
            triple_strings = Some([
                args.triple[0].clone(),
                args.triple[1].clone(),
                args.triple[2].clone(),
            ]);
            (m.to_f64(), fol.frame_field(), vec![GroupPoint::IDENTITY])
        }
        NamedField::Axis(i) => {
            let eps = args.eps.ok_or_else(|| {
                CliError::validation("axis fields live on a Berger sphere; pass --eps")
            })?;
            (
                MilnorTriple::berger(eps)?,
                FrameField::basis(i),
                vec![GroupPoint::IDENTITY],
            )
        }
        NamedField::Killing { v, c } => {
            let eps = args.eps.ok_or_else(|| {
                CliError::validation("killing fields live on a Berger sphere; pass --eps")
            })?;
            let m = MilnorTriple::berger(eps)?;
            let k = right_invariant_field(AlgebraVector::new(v[0], v[1], v[2]), &m);
            let field = FrameField::general(move |g: &GroupPoint| {
                let kv = k.eval(g).add(&FrameVec::basis(2).scale(&c));
                let n = kv.norm();
                kv.scale(&(1.0 / n))
            });
            let fc = field.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let samples = random_points_where(&mut rng, args.samples.max(1), |g| {
                let cv = fc.eval(g);
                cv.is_finite() && cv.c[0].hypot(cv.c[1]) > 0.2
            })
            .ok_or_else(|| {
                CliError::Numerical(
                    "could not sample the chart; the field may be too close to the Hopf axis"
                        .into(),
                )
            })?;
            (m, field, samples)
        }
    };

    let check = if certify {
        None
    } else {
        Some(is_metric_foliation(
            &metric,
            &field,
            &samples,
            args.tol,
            &FdConfig::refined(1e-4),
        )?)
    };
    let certificate = if certify {
        Some(homogeneity_certificate(
            &metric,
            &field,
            &samples[0],
            &samples,
            args.tol,
        )?)
    } else {
        None
    };

    let verdict = if let Some(check) = &check {
        if check.is_metric {
            "metric foliation within tolerance".to_string()
        } else {
            format!("not a metric foliation (max residual {})", fmt_f64(check.max_residual))
        }
    } else {
        match certificate.as_ref().unwrap() {
            CertificateOutcome::Homogeneous(data) => format!(
                "homogeneous (max Killing residual {})",
                fmt_f64(data.max_killing_residual)
            ),
            CertificateOutcome::NotClosed { pair, value, .. } => format!(
                "not homogeneous: d_omega(E{},E{}) = {}",
                pair.0 + 1,
                pair.1 + 1,
                fmt_f64(*value)
            ),
            CertificateOutcome::KillingResidualExceeded(data) => format!(
                "inconclusive: reconstructed field has Killing residual {}",
                fmt_f64(data.max_killing_residual)
            ),
        }
    };

    let report = FieldRunReport {
        field: args.field.clone(),
        eps: args.eps,
        triple: triple_strings,
        seed: args.seed,
        tolerance: args.tol,
        exact_residuals,
        check,
        certificate,
        verdict: verdict.clone(),
    };
    let content = match args.format {
        Format::Json => to_json_pretty(&report)?,
        Format::Text => format!("field {}: {}\n", report.field, verdict),
        Format::Csv => {
            if let Some(check) = &report.check {
                let rows: Vec<Vec<String>> = check
                    .samples
                    .iter()
                    .map(|s| {
                        vec![
                            fmt_f64(s.point.w),
                            fmt_f64(s.point.x),
                            fmt_f64(s.point.y),
                            fmt_f64(s.point.z),
                            fmt_f64(s.residuals[0]),
                            fmt_f64(s.residuals[1]),
                            fmt_f64(s.residuals[2]),
                            fmt_f64(s.mean_curvature[0]),
                            fmt_f64(s.mean_curvature[1]),
                            fmt_f64(s.mean_curvature[2]),
                        ]
                    })
                    .collect();
                csv_table(
                    &[
                        "qw", "qx", "qy", "qz", "r_uu", "r_ww", "r_uw", "omega1", "omega2",
                        "omega3",
                    ],
                    &rows,
                )?
            } else {
                let mut rows = vec![vec!["verdict".to_string(), verdict.clone()]];
                if let Some(CertificateOutcome::Homogeneous(data)) = &report.certificate {
                    for (i, (f, r)) in data
                        .f_values
                        .iter()
                        .zip(&data.killing_residuals)
                        .enumerate()
                    {
                        rows.push(vec![
                            format!("sample_{i}"),
                            format!("f={} killing={}", fmt_f64(*f), fmt_f64(*r)),
                        ]);
                    }
                }
                csv_table(&["key", "value"], &rows)?
            }
        }
    };
    emit(&args.out, &content)
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Serialize)]
struct SweepRow {
    eps: f64,
    theta: f64,
    period: f64,
    shift: f64,
    max_residual: f64,
}

pub fn sweep(args: SweepArgs) -> Result<(), CliError> {
    if args.eps_count == 0 || args.theta_count == 0 {
        return Err(CliError::validation("the sweep grid must be non-empty"));
    }
    if !(args.eps_min > 0.0) || !(args.eps_max >= args.eps_min) {
        return Err(CliError::validation(format!(
            "bad eps range [{}, {}]",
            args.eps_min, args.eps_max
        )));
    }
    if args.times == 0 {
        return Err(CliError::validation("--times must be positive"));
    }
    let eps_grid: Vec<f64> = (0..args.eps_count)
        .map(|k| {
            if args.eps_count == 1 {
                args.eps_min
            } else {
                args.eps_min
                    + (args.eps_max - args.eps_min) * k as f64 / (args.eps_count - 1) as f64
            }
        })
        .collect();
    if let Some(bad) = eps_grid.iter().find(|&&e| (e - 1.0).abs() < 1e-12) {
        return Err(CliError::validation(format!(
            "the grid hits eps = {bad}, the round metric; adjust the range or count"
        )));
    }
    let theta_grid: Vec<f64> = (0..args.theta_count)
        .map(|k| std::f64::consts::PI * (k + 1) as f64 / (args.theta_count + 1) as f64)
        .collect();

    let cells: Vec<(f64, f64)> = eps_grid
        .iter()
        .flat_map(|&e| theta_grid.iter().map(move |&t| (e, t)))
        .collect();
    let rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|&(eps, theta)| {
            let spec = BergerGeodesicSpec::new(eps, theta)?;
            let times: Vec<f64> = (0..args.times)
                .map(|i| {
                    -spec.period + 3.0 * spec.period * i as f64 / (args.times.max(2) - 1) as f64
                })
                .collect();
            let max_residual = verify_period_shift(eps, theta, &times)?;
            Ok(SweepRow {
                eps,
                theta,
                period: spec.period,
                shift: spec.shift,
                max_residual,
            })
        })
        .collect::<Result<_, su2geo::Error>>()?;

    let content = match args.format {
        Format::Json => to_json_pretty(&rows)?,
        Format::Csv | Format::Text => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        fmt_f64(r.eps),
                        fmt_f64(r.theta),
                        fmt_f64(r.period),
                        fmt_f64(r.shift),
                        fmt_f64(r.max_residual),
                    ]
                })
                .collect();
            csv_table(&["eps", "theta", "period", "shift", "max_residual"], &table)?
        }
    };
    emit(&args.out, &content)
}
