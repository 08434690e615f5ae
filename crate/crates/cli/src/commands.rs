use std::io::Write;
use std::path::Path;

use fracpath::bv::{self, BoundedVariation};
use fracpath::experiments::{self, ExperimentReport, FailureConfig, McPlan, ReportRow};
use fracpath::fbm::{FbmConfig, FbmMethod};
use fracpath::fraccalc::{self, FracParams, GridFn};
use fracpath::{io, rng};

use crate::config::{
    at_least, dyadic_grids, open_interval, positive, CliError, CliResult, List, Resolver,
};
use crate::{BvcheckArgs, Command, Common, FailureArgs, FbmArgs, GlsArgs, MaxrepArgs, QvArgs};

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Fbm(a) => fbm(a),
        Command::Qv(a) => qv(a),
        Command::Maxrep(a) => maxrep(a),
        Command::Bvcheck(a) => bvcheck(a),
        Command::Gls(a) => gls(a),
        Command::Failure(a) => failure(a),
    }
}

/// Writes `csv` to `--out` (summary on stdout) or to stdout (summary on stderr).
fn emit(out: Option<&Path>, csv: Vec<u8>, summary: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            std::fs::write(path, csv).map_err(|source| CliError::Io {
                path: path.into(),
                source,
            })?;
            println!("{summary}");
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&csv)
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn report_csv(report: &ExperimentReport, meta: &[(String, String)]) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    io::write_report_csv(&mut buf, report, meta)?;
    Ok(buf)
}

struct Base {
    resolver: Resolver,
    seed: u64,
    horizon: f64,
}

fn base(name: &str, common: &Common) -> CliResult<Base> {
    let mut resolver = Resolver::new(name, common.config.as_deref())?;
    let seed = resolver.get("seed", common.seed, 42)?;
    let horizon = positive("horizon", resolver.get("horizon", common.horizon, 1.0)?)?;
    Ok(Base {
        resolver,
        seed,
        horizon,
    })
}

fn out_path(resolver: &mut Resolver, common: &Common) -> CliResult<Option<std::path::PathBuf>> {
    resolver.optional("out", common.out.clone())
}

fn hurst(r: &mut Resolver, flag: Option<f64>, default: f64) -> CliResult<f64> {
    open_interval("hurst", r.get("hurst", flag, default)?, 0.0, 1.0)
}

fn fbm(a: FbmArgs) -> CliResult<()> {
    let Base {
        mut resolver,
        seed,
        horizon,
    } = base("fbm", &a.common)?;
    let out = out_path(&mut resolver, &a.common)?;
    let hurst = hurst(&mut resolver, a.hurst, 0.75)?;
    let steps = at_least("steps", resolver.get("steps", a.steps, 1024)?, 1)?;
    let method: FbmMethod = resolver
        .get("method", a.method, "circulant".to_string())?
        .parse()
        .map_err(|_| CliError::Config("method must be one of circulant, cholesky".into()))?;
    let meta = resolver.finish()?;

    let config = FbmConfig::new(hurst, horizon, steps, seed, method)?;
    let path = fracpath::fbm::sample(&config)?;
    let mut buf = Vec::new();
    io::write_path_csv(&mut buf, &path, &meta)?;
    let summary = format!(
        "fbm: H={hurst} {method}, {steps} steps on [0, {horizon}], seed {seed}: B_T = {:.6}, max = {:.6}",
        path.last(),
        path.max()
    );
    emit(out.as_deref(), buf, &summary)
}

fn qv(a: QvArgs) -> CliResult<()> {
    let Base {
        mut resolver,
        seed,
        horizon,
    } = base("qv", &a.common)?;
    let out = out_path(&mut resolver, &a.common)?;
    let hurst = hurst(&mut resolver, a.hurst, 0.75)?;
    let default_grids = List((8..=14).map(|k| 1usize << k).collect());
    let grids = dyadic_grids("grids", &resolver.get("grids", a.grids, default_grids)?)?;
    let replicas = at_least("replicas", resolver.get("replicas", a.replicas, 200)?, 1)?;
    let meta = resolver.finish()?;

    let plan = McPlan::new(replicas, seed, grids.clone(), hurst, horizon)?;
    let report = experiments::qv_study(&plan)?;
    let summary = match report.rows.last().and_then(|r| r.slope.zip(r.slope_err)) {
        Some((slope, err)) => format!(
            "qv: H={hurst}, {replicas} paths on {} grids: slope {slope:.4} +- {err:.4} (1 - 2H = {:.4})",
            grids.len(),
            1.0 - 2.0 * hurst
        ),
        None => format!("qv: H={hurst}, {replicas} paths: mean QV {:.6} at n={}", report.rows[0].estimate, grids[0]),
    };
    emit(out.as_deref(), report_csv(&report, &meta)?, &summary)
}

fn maxrep(a: MaxrepArgs) -> CliResult<()> {
    let Base {
        mut resolver,
        seed,
        horizon,
    } = base("maxrep", &a.common)?;
    let out = out_path(&mut resolver, &a.common)?;
    let hurst = resolver.get("hurst", a.hurst, 0.5)?;
    if hurst != 0.5 {
        return Err(CliError::Config(format!(
            "hurst = {hurst} is out of range; maxrep needs exactly 0.5"
        )));
    }
    let steps = resolver.optional("steps", a.steps)?;
    let grids_flag = resolver.optional("grids", a.grids)?;
    let grids = match (steps, grids_flag) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config(
                "give either steps or grids, not both".into(),
            ))
        }
        (Some(n), None) => List(vec![n]),
        (None, Some(g)) => g,
        (None, None) => List(vec![256, 1024, 4096]),
    };
    let grids = dyadic_grids("grids", &grids)?;
    resolver.record("grids", &List(grids.clone()));
    let replicas = at_least("replicas", resolver.get("replicas", a.replicas, 10_000)?, 1)?;
    let meta = resolver.finish()?;

    let plan = McPlan::new(replicas, seed, grids, hurst, horizon)?;
    let report = experiments::mc_max_representation(&plan)?;
    let finest = plan.finest();
    let mean = report
        .find("maxrep_mean", Some(finest), None)
        .expect("row per grid");
    let rms = report
        .find("maxrep_residual_rms", Some(finest), None)
        .expect("row per grid");
    let summary = format!(
        "maxrep: {replicas} paths, n={finest}: E(S_T) ~ {:.6} +- {:.6} (sqrt(2T/pi) = {:.6}), residual RMS {:.6}",
        mean.estimate,
        mean.std_err.unwrap_or(0.0),
        experiments::brownian_max_mean(horizon),
        rms.estimate
    );
    emit(out.as_deref(), report_csv(&report, &meta)?, &summary)
}

fn bvcheck(a: BvcheckArgs) -> CliResult<()> {
    let Base {
        mut resolver,
        seed,
        horizon,
    } = base("bvcheck", &a.common)?;
    let out = out_path(&mut resolver, &a.common)?;
    let corpus = at_least("corpus", resolver.get("corpus", a.corpus, 1000)?, 1)?;
    let pieces = at_least("pieces", resolver.get("pieces", a.pieces, 40)?, 1)?;
    let meta = resolver.finish()?;

    // residuals in units of 1e-12 (1 + TV)
    let unit = |tv: f64| 1e-12 * (1.0 + tv);
    let (mut identity, mut ac) = (0.0f64, 0.0f64);
    for i in 0..corpus as u64 {
        let f = bv::random_pl(&mut rng::stream(seed, i), horizon, pieces);
        let integral = bv::record_integral(&f);
        let gain = f.running_max().end_value() - f.start_value();
        identity = identity.max((gain - integral).abs() / unit(f.total_variation()));
        ac = ac.max((bv::ac_check(&f) - integral).abs() / unit(f.total_variation()));
    }
    let (mut step_gap, mut gapped) = (0.0f64, 0usize);
    for i in 0..corpus as u64 {
        let f = bv::random_step(&mut rng::stream(seed ^ 0x5354_4550, i), horizon, 12);
        let r = bv::record_integral_step(&f);
        step_gap = step_gap.max((r.residual + r.gap_sum).abs() / unit(f.total_variation()));
        gapped += usize::from(r.gapped_jumps > 0);
    }
    let example = bv::record_integral_step(&bv::jump_counterexample());

    let mut report = ExperimentReport::default();
    let n = Some(corpus);
    report.push(ReportRow::estimate(
        "record_identity_max_units",
        n,
        None,
        identity,
        None,
    ));
    report.push(ReportRow::estimate("ac_route_max_units", n, None, ac, None));
    report.push(ReportRow::estimate(
        "step_residual_gap_max_units",
        n,
        None,
        step_gap,
        None,
    ));
    report.push(ReportRow::estimate(
        "step_gapped_functions",
        n,
        None,
        gapped as f64,
        None,
    ));
    report.push(ReportRow::estimate(
        "counterexample_residual",
        None,
        None,
        example.residual,
        None,
    ));
    report.push(ReportRow::estimate(
        "counterexample_gap_sum",
        None,
        None,
        example.gap_sum,
        None,
    ));
    let csv = report_csv(&report, &meta)?;

    let ok = identity <= 1.0 && ac <= 1.0 && step_gap <= 1.0;
    let summary = format!(
        "bvcheck: {corpus} PL functions, max residual {identity:.3} x 1e-12*(1+TV) (ac route {ac:.3}); \
         {gapped} step functions with gapped records, max |residual + gap sum| {step_gap:.3} x 1e-12*(1+TV); \
         counterexample residual {} = -gap sum {}: {}",
        example.residual,
        example.gap_sum,
        if ok { "ok" } else { "VIOLATED" }
    );
    emit(out.as_deref(), csv, &summary)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Check("record integral identity violated".into()))
    }
}

fn read_grid(path: &Path) -> CliResult<GridFn> {
    let file = std::fs::File::open(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    Ok(io::read_grid_fn_csv(file)?)
}

fn gls(a: GlsArgs) -> CliResult<()> {
    let Base {
        mut resolver,
        horizon,
        ..
    } = base("gls", &a.common)?;
    let out = out_path(&mut resolver, &a.common)?;
    let beta = open_interval(
        "beta",
        resolver.get("beta", a.beta, fraccalc::default_beta(0.75))?,
        0.0,
        1.0,
    )?;
    let f_path = resolver.optional("f", a.f)?;
    let g_path = resolver.optional("g", a.g)?;
    let (f, g) = match (f_path, g_path) {
        (Some(fp), Some(gp)) => {
            resolver.record("f", &fp.display());
            resolver.record("g", &gp.display());
            (read_grid(&fp)?, read_grid(&gp)?)
        }
        (None, None) => {
            let steps = at_least("steps", resolver.get("steps", a.steps, 4096)?, 1)?;
            (
                GridFn::from_fn(horizon, steps, |x| x * x)?,
                GridFn::from_fn(horizon, steps, |x| x * x * x)?,
            )
        }
        _ => return Err(CliError::Config("f and g must be given together".into())),
    };
    let t = resolver.get("t", a.t, f.horizon())?;
    let meta = resolver.finish()?;

    let params = FracParams::new(beta, f.steps() + 1)?;
    let integral = fraccalc::gls_integral(&f, &g, &params, t)?;
    let bound = fraccalc::gls_bound_check(&f, &g, &params, t)?;
    let mut report = ExperimentReport::default();
    let steps = f.restrict(t)?.steps();
    let n = Some(steps);
    report.push(ReportRow::estimate("gls_integral", n, None, integral, None));
    report.push(ReportRow::estimate(
        "gls_bound_lhs",
        n,
        None,
        bound.lhs,
        None,
    ));
    report.push(ReportRow::estimate(
        "gls_bound_rhs",
        n,
        None,
        bound.rhs,
        None,
    ));
    let csv = report_csv(&report, &meta)?;
    let summary = format!(
        "gls: int_0^{t} f dg = {integral:.6} (beta={beta}, {} points); |.| <= {:.6}: {}",
        steps + 1,
        bound.rhs,
        if bound.holds { "holds" } else { "VIOLATED" }
    );
    emit(out.as_deref(), csv, &summary)?;
    if bound.holds {
        Ok(())
    } else {
        Err(CliError::Check("GLS bound violated".into()))
    }
}

fn failure(a: FailureArgs) -> CliResult<()> {
    let Base {
        mut resolver,
        seed,
        horizon,
    } = base("failure", &a.common)?;
    let out = out_path(&mut resolver, &a.common)?;
    let hurst = open_interval("hurst", resolver.get("hurst", a.hurst, 0.75)?, 0.5, 1.0)?;
    let beta = open_interval(
        "beta",
        resolver.get("beta", a.beta, fraccalc::default_beta(hurst))?,
        1.0 - hurst,
        0.5,
    )?;
    let defaults = FailureConfig::new(hurst);
    let replicas = at_least(
        "replicas",
        resolver.get("replicas", a.replicas, defaults.replicas)?,
        1,
    )?;
    let grids = dyadic_grids(
        "grids",
        &resolver.get("grids", a.grids, List(defaults.grids.clone()))?,
    )?;
    let eps = resolver
        .get("eps", a.eps, List(defaults.eps_list.clone()))?
        .0;
    if eps.is_empty() || eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
        return Err(CliError::Config(format!(
            "eps = {} is out of range; expected values > 0",
            List(eps)
        )));
    }
    let refine = resolver.get("refine", a.refine, defaults.refine)?;
    if !refine.is_power_of_two() {
        return Err(CliError::Config(format!(
            "refine = {refine} is out of range; expected a power of two"
        )));
    }
    let gls_paths = resolver.get("gls-paths", a.gls_paths, defaults.gls_paths.min(replicas))?;
    if gls_paths > replicas {
        return Err(CliError::Config(format!(
            "gls-paths = {gls_paths} is out of range; expected <= replicas ({replicas})"
        )));
    }
    let gls_grid = resolver.get("gls-grid", a.gls_grid, defaults.gls_grid)?;
    if !grids.contains(&gls_grid) {
        return Err(CliError::Config(format!(
            "gls-grid = {gls_grid} is out of range; expected one of {}",
            List(grids)
        )));
    }
    let meta = resolver.finish()?;

    let config = FailureConfig {
        hurst,
        horizon,
        beta,
        replicas,
        seed,
        grids,
        eps_list: eps,
        refine,
        gls_paths,
        gls_grid,
    };
    let report = experiments::failure_battery(&config)?;
    let occ = report.estimates("record_occupation");
    let excess = report.estimates("discrete_record_excess_min");
    let gls_integrals = report.estimates("gls_indicator_abs_integral");
    let mut summary = format!(
        "failure: H={hurst} beta={beta}, {replicas} paths; occupation at eps=0 {:.4} -> {:.4} over grids; discrete record sum >= max gain on every path: {}",
        occ[0],
        occ[occ.len() - 1],
        if excess.iter().all(|&x| x >= 0.0) { "yes" } else { "NO" }
    );
    if let (Some(first), Some(last)) = (gls_integrals.first(), gls_integrals.last()) {
        summary.push_str(&format!(
            "; mean |GLS integral| {first:.4} -> {last:.4} over eps"
        ));
    }
    emit(out.as_deref(), report_csv(&report, &meta)?, &summary)
}
