use freepick::hardy::min_norm_interpolate;
use freepick::herglotz::{eval_herglotz, schur_cayley, HerglotzForm};
use freepick::matcore::{cayley, hermitian_eigen, imag_part, real_part, spectral_norm, CayleyDirection};
use freepick::monotone::{certify_monotone, choi_at, sample_monotone_test, sampling_radius};
use freepick::nevanlinna::{asymptotic_probe, classify_type, eval_representation};
use freepick::series::{axiom_verify, derivative, eval_series, DerivativeMethod, Domain};
use freepick::wire::{matrix_to_wire, tuple_to_json, vector_to_wire};
use freepick::{CMat, Error, MatrixTuple};
use serde_json::{json, Value};

use crate::io::{parse_matrix, parse_model, parse_series, parse_spec, parse_tuple, required, CliResult};
use crate::RunArgs;

pub struct Outcome {
    pub ok: bool,
    pub report: Value,
}

fn ok(report: Value) -> CliResult<Outcome> {
    Ok(Outcome { ok: true, report })
}

fn lib<T>(r: Result<T, Error>) -> CliResult<T> {
    r.map_err(|e| e.to_string())
}

fn min_eig(m: &CMat) -> CliResult<f64> {
    Ok(lib(hermitian_eigen(m))?.min())
}

pub fn eval(args: &RunArgs) -> CliResult<Outcome> {
    let f = parse_series(required(&args.series, "series")?)?;
    let x = parse_tuple(required(&args.point, "point")?)?;
    let r = lib(eval_series(&f, &x))?;
    ok(json!({
        "value": matrix_to_wire(&r.value),
        "tail_bound": r.tail_bound,
    }))
}

pub fn deriv(args: &RunArgs) -> CliResult<Outcome> {
    let f = parse_series(required(&args.series, "series")?)?;
    let x = parse_tuple(required(&args.point, "point")?)?;
    let h = parse_tuple(required(&args.direction, "direction")?.as_ref())?;
    let method: DerivativeMethod = lib(args.method.as_deref().unwrap_or("block").parse())?;
    let value = lib(derivative(&f, &x, &h, method))?;
    ok(json!({ "value": matrix_to_wire(&value) }))
}

pub fn monotone(args: &RunArgs) -> CliResult<Outcome> {
    let f = parse_series(required(&args.series, "series")?)?;
    let cert = lib(certify_monotone(&f, args.degree, args.tol))?;
    let sampled = lib(sample_monotone_test(&f, args.dim, args.samples, args.seed, args.tol))?;
    let mut okay = cert.is_certified() && sampled.pass();
    let mut report = json!({
        "certificate": cert.to_wire(),
        "truncated": cert.truncated(),
        "sampled": sampled,
    });
    if let Some(p) = &args.point {
        let x = parse_tuple(p)?;
        let choi = lib(choi_at(&f, &x, args.tol))?;
        okay &= choi.all_completely_positive();
        report["choi"] = json!(choi
            .coordinates
            .iter()
            .map(|c| json!({
                "k": c.k,
                "min_eig": c.report.min_eig,
                "completely_positive": c.completely_positive(),
                "kraus_rank": c.kraus.len(),
                "reconstruction_residual": c.reconstruction_residual,
            }))
            .collect::<Vec<_>>());
    }
    Ok(Outcome { ok: okay, report })
}

pub fn interpolate(args: &RunArgs) -> CliResult<Outcome> {
    let x = parse_tuple(required(&args.point, "point")?)?;
    let target = match (&args.target, &args.series) {
        (Some(t), _) => parse_matrix(t)?,
        (None, Some(s)) => lib(eval_series(&parse_series(s)?, &x))?.value,
        (None, None) => return Err("interpolate needs --target or --series".into()),
    };
    match min_norm_interpolate(&x, &target, args.degree) {
        Ok(it) => ok(json!({
            "feasible": true,
            "series": it.series.to_wire(),
            "mu": vector_to_wire(&it.mu),
            "norm": it.norm,
            "residual": it.residual,
            "consistency_residual": it.consistency_residual,
        })),
        Err(Error::Infeasible { residual }) => Ok(Outcome {
            ok: false,
            report: json!({ "feasible": false, "consistency_residual": residual }),
        }),
        Err(e) => Err(e.to_string()),
    }
}

pub fn axioms(args: &RunArgs) -> CliResult<Outcome> {
    let report = if let Some(p) = &args.series {
        let f = parse_series(p)?;
        let domain = Domain::Hermitian {
            radius: sampling_radius(&f),
        };
        axiom_verify(|x| eval_series(&f, x).map(|r| r.value), f.d(), domain, args.samples, args.seed, args.tol)
    } else if let Some(p) = &args.rep {
        let spec = parse_spec(p)?;
        axiom_verify(|z| eval_representation(&spec, z), spec.d(), Domain::UpperHalfPlane, args.samples, args.seed, args.tol)
    } else if let Some(p) = &args.model {
        let model = parse_model(p)?;
        let form: HerglotzForm = lib(args.method.as_deref().unwrap_or("cayley").parse())?;
        axiom_verify(|x| eval_herglotz(&model, x, form), model.d(), Domain::Contraction, args.samples, args.seed, args.tol)
    } else {
        return Err("axioms needs one of --series, --rep, --model".into());
    };
    Ok(Outcome {
        ok: report.pass,
        report: json!(report),
    })
}

pub fn rep_eval(args: &RunArgs) -> CliResult<Outcome> {
    let spec = parse_spec(required(&args.rep, "rep")?)?;
    let z = parse_tuple(required(&args.point, "point")?)?;
    let h = lib(eval_representation(&spec, &z))?;
    let im = min_eig(&lib(imag_part(&h))?)?;
    ok(json!({
        "kind": spec.kind(),
        "value": matrix_to_wire(&h),
        "min_im_eig": im,
    }))
}

pub fn rep_classify(args: &RunArgs) -> CliResult<Outcome> {
    let spec = parse_spec(required(&args.rep, "rep")?)?;
    let direction = match &args.direction {
        None => None,
        Some(d) => Some(
            d.split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|e| format!("--direction: {e}")))
                .collect::<CliResult<Vec<f64>>>()?,
        ),
    };
    let probe = lib(asymptotic_probe(|z| eval_representation(&spec, z), spec.d(), args.smax, direction.as_deref()))?;
    let class = classify_type(&probe);
    ok(json!({
        "kind": spec.kind(),
        "type": class.kind,
        "inconclusive": class.inconclusive,
        "limits": class.limits,
        "converged": class.converged,
        "probe": probe,
    }))
}

pub fn herglotz_eval(args: &RunArgs) -> CliResult<Outcome> {
    let model = parse_model(required(&args.model, "model")?)?;
    let x = parse_tuple(required(&args.point, "point")?)?;
    let form: HerglotzForm = lib(args.method.as_deref().unwrap_or("cayley").parse())?;
    let h = lib(eval_herglotz(&model, &x, form))?;
    let re = min_eig(&lib(real_part(&h))?)?;
    let phi = lib(schur_cayley(|x: &MatrixTuple| eval_herglotz(&model, x, form))(&x))?;
    ok(json!({
        "value": matrix_to_wire(&h),
        "min_re_eig": re,
        "schur": matrix_to_wire(&phi),
        "schur_norm": spectral_norm(&phi),
    }))
}

pub fn cayley_cmd(args: &RunArgs) -> CliResult<Outcome> {
    let x = parse_tuple(required(&args.point, "point")?)?;
    let dir: CayleyDirection = lib(required(&args.direction, "direction")?.parse())?;
    let out = lib(cayley(&x, dir))?;
    ok(json!({ "tuple": tuple_to_json(&out) }))
}
