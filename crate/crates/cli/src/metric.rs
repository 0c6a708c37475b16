//! The `metric` subcommands.

use std::f64::consts::PI;
use std::path::PathBuf;

use serde::Serialize;
use swlab_metric::probes::Grid;
use swlab_metric::{gauss_bonnet_disk, sphere_area_probe, w3_limit, Model};

use crate::report::{metric_failure, write_json, ErrorInfo, Failure, Tool, SCHEMA, TOOL};
use crate::{LimitArgs, MetricCommand, ProbeArgs};

pub const DISK_TOLERANCE: f64 = 1e-6;
pub const AREA_TOLERANCE: f64 = 1e-6;
pub const LIMIT_TOLERANCE: f64 = 1e-4;

const DISK_READING: &str = "disk Gauss-Bonnet: integral of K over the geodesic disk plus the boundary geodesic-curvature integral, compared with 2*pi";

#[derive(Serialize)]
struct ReportFile<T: Serialize> {
    schema: u32,
    tool: Tool,
    command: &'static str,
    model: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<T>,
}

#[derive(Serialize)]
struct DiskOutput {
    reading: &'static str,
    #[serde(flatten)]
    disk: swlab_metric::DiskResult,
    expected_total: f64,
    closed_form_interior: f64,
    closed_form_boundary: f64,
}

#[derive(Serialize)]
struct AreaOutput {
    #[serde(flatten)]
    probe: swlab_metric::ProbeResult,
    closed_form: f64,
}

#[derive(Serialize)]
struct LimitOutput {
    #[serde(flatten)]
    limit: swlab_metric::LimitResult,
    eps_list: Vec<f64>,
}

fn grid_for(base: Grid, directions: Option<usize>) -> Grid {
    directions.map_or(base, |n| base.with_directions(n))
}

fn emit<T: Serialize>(
    report: &Option<PathBuf>,
    command: &'static str,
    model: &str,
    outcome: Result<T, Failure>,
    check: impl FnOnce(&T) -> Result<(), Failure>,
) -> Result<(), Failure> {
    let (result, outcome) = match outcome {
        Ok(r) => {
            let c = check(&r);
            (Some(r), c)
        }
        Err(f) => (None, Err(f)),
    };
    if let Some(path) = report {
        let file = ReportFile {
            schema: SCHEMA,
            tool: TOOL,
            command,
            model: model.to_string(),
            status: outcome.as_ref().map_or_else(|f| f.status(), |_| "ok"),
            error: outcome.as_ref().err().map(ErrorInfo::from),
            result,
        };
        write_json(path, &file)?;
    }
    outcome
}

fn gauss_bonnet(args: &ProbeArgs) -> Result<(), Failure> {
    let run = || -> Result<DiskOutput, Failure> {
        let model = Model::parse(&args.model, args.warp).map_err(metric_failure)?;
        if model.dim() != 2 {
            return Err(Failure::Usage(format!("{} is not 2-dimensional", model.name())));
        }
        let grid = grid_for(Grid::disk(), args.grid);
        let disk = gauss_bonnet_disk(&model, &[0.0, 0.0], args.eps, &grid).map_err(metric_failure)?;
        let (ci, cb) = model.exact_disk(args.eps).expect("2-dimensional model");
        println!("model       {model}");
        println!("eps         {}", args.eps);
        println!("grid        {} directions, {} steps", grid.directions, grid.steps);
        println!("interior    {:.9}   closed form {ci:.9}", disk.interior);
        println!("boundary    {:.9}   closed form {cb:.9}", disk.boundary);
        println!("total       {:.9}   2pi = {:.9}", disk.total, 2.0 * PI);
        println!("error est   {:.3e}", disk.error_estimate);
        println!("w2 cochain  {}", disk.cochain);
        println!("reading     {DISK_READING}");
        Ok(DiskOutput { reading: DISK_READING, disk, expected_total: 2.0 * PI, closed_form_interior: ci, closed_form_boundary: cb })
    };
    emit(&args.report, "gauss-bonnet", &args.model, run(), |o| {
        let gap = (o.disk.total - 2.0 * PI).abs();
        if gap > DISK_TOLERANCE || o.disk.cochain != 1 {
            return Err(Failure::Verification(format!("total differs from 2pi by {gap:.3e} (tolerance {DISK_TOLERANCE:e})")));
        }
        Ok(())
    })
}

fn sphere_area(args: &ProbeArgs) -> Result<(), Failure> {
    let run = || -> Result<AreaOutput, Failure> {
        let model = Model::parse(&args.model, args.warp).map_err(metric_failure)?;
        let grid = grid_for(Grid::sphere(model.dim()), args.grid);
        let center = vec![0.0; model.dim()];
        let probe = sphere_area_probe(&model, &center, args.eps, &grid).map_err(metric_failure)?;
        let closed_form = model.exact_sphere_measure(args.eps);
        let what = if model.dim() == 2 { "length" } else { "area" };
        println!("model       {model}");
        println!("eps         {}", args.eps);
        if model.dim() == 2 {
            println!("grid        {} directions, {} steps", grid.directions, grid.steps);
        } else {
            println!("grid        {} x {} directions, {} steps", grid.polar, grid.directions, grid.steps);
        }
        println!("{what:<11} {:.12}   closed form {closed_form:.12}", probe.value);
        println!("ratio       {:.12}", probe.ratio.unwrap_or(f64::NAN));
        println!("error est   {:.3e}", probe.error_estimate);
        Ok(AreaOutput { probe, closed_form })
    };
    emit(&args.report, "sphere-area", &args.model, run(), |o| {
        let gap = (o.probe.value - o.closed_form).abs() / o.closed_form;
        if gap > AREA_TOLERANCE {
            return Err(Failure::Verification(format!("relative gap {gap:.3e} to the closed form")));
        }
        Ok(())
    })
}

fn limit(args: &LimitArgs) -> Result<(), Failure> {
    let run = || -> Result<LimitOutput, Failure> {
        let model = Model::parse(&args.model, args.warp).map_err(metric_failure)?;
        if model.dim() != 3 {
            return Err(Failure::Usage(format!("{} is not 3-dimensional", model.name())));
        }
        let grid = grid_for(Grid::sphere(3), args.grid);
        let limit = w3_limit(&model, &[0.0; 3], &args.eps_list, &grid).map_err(metric_failure)?;
        println!("model       {model}");
        for p in &limit.probes {
            println!("eps {:<8} ratio {:.12}   error est {:.3e}", p.eps, p.ratio.unwrap_or(f64::NAN), p.error_estimate);
        }
        println!("limit       {:.9}", limit.limit);
        println!("error est   {:.3e}", limit.error_estimate);
        println!("w3 cochain  {}", limit.cochain);
        Ok(LimitOutput { limit, eps_list: args.eps_list.clone() })
    };
    emit(&args.report, "w3-limit", &args.model, run(), |o| {
        let gap = (o.limit.limit - 1.0).abs();
        if gap > LIMIT_TOLERANCE || o.limit.cochain != 1 {
            return Err(Failure::Verification(format!("limit differs from 1 by {gap:.3e}")));
        }
        Ok(())
    })
}

pub fn run(cmd: &MetricCommand) -> Result<(), Failure> {
    match cmd {
        MetricCommand::GaussBonnet(a) => gauss_bonnet(a),
        MetricCommand::SphereArea(a) => sphere_area(a),
        MetricCommand::W3Limit(a) => limit(a),
    }
}
