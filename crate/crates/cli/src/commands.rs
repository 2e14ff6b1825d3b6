use crate::scenario::{GridSpec, Scenario};
use crate::table::{csv_writer, fmt_f64, write_metadata, ComparisonRow, Metadata, ResultTable, Row};
use crate::{CliError, Result};
use hetdiv_analytic::{evaluate_curve, AnalyticError, CoverageQuery, Method, Scheme};
use hetdiv_hetnet::units::db_to_linear;
use hetdiv_hetnet::{interference_correlation, interference_variance, HetNetError, NetworkConfig};
use hetdiv_montecarlo::{interference_moments, run, MomentReport, SimError, SimScheme};
use std::io::Write;

/// Command-line settings that take precedence over the scenario file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub schemes: Option<Vec<String>>,
    pub grid: Option<GridSpec>,
    pub seed: Option<u64>,
    pub iterations: Option<u64>,
    pub rate_loss: bool,
}

impl Overrides {
    pub fn apply(&self, sc: &Scenario) -> Result<Scenario> {
        let mut s = sc.clone();
        if let Some(v) = &self.schemes {
            s.schemes = v.clone();
        }
        if let Some(g) = &self.grid {
            s.grid = g.clone();
        }
        if let Some(x) = self.seed {
            s.sim.seed = x;
        }
        if let Some(n) = self.iterations {
            s.sim.iterations = n;
        }
        s.rate_loss |= self.rate_loss;
        s.validate()?;
        Ok(s)
    }
}

fn analytic_scheme(name: &str) -> Result<Scheme> {
    let key = name.trim().to_ascii_uppercase().replace('-', "_");
    let key = match key.as_str() {
        "IA_MRC_EXACT" | "IA_MRC_SIMPLIFIED" => "IA_MRC",
        k => k,
    };
    key.parse().map_err(|e: AnalyticError| CliError::Config(e.to_string()))
}

fn sim_scheme(name: &str) -> Result<SimScheme> {
    name.parse().map_err(|e: SimError| CliError::Config(e.to_string()))
}

/// Analytic counterpart of a simulated receiver.
fn oracle_of(s: SimScheme) -> Scheme {
    match s {
        SimScheme::IbMrc => Scheme::IbMrc,
        SimScheme::IaMrcExact | SimScheme::IaMrcSimplified => Scheme::IaMrc,
        SimScheme::Sc => Scheme::Sc,
        SimScheme::IaNc => Scheme::IaNc,
        SimScheme::IaFc => Scheme::IaFc,
    }
}

fn analytic_error(scheme: Scheme, thresholds_db: &[f64], e: AnalyticError) -> CliError {
    match e {
        AnalyticError::Numerical { .. } => CliError::Numerical(format!("{scheme}: {e}")),
        AnalyticError::Curve(failures) => {
            let numerical = failures.iter().any(|(_, f)| matches!(f, AnalyticError::Numerical { .. }));
            let list: Vec<String> = failures
                .iter()
                .map(|(i, f)| format!("({scheme}, T = {} dB): {f}", thresholds_db[*i]))
                .collect();
            if numerical {
                CliError::Numerical(list.join("; "))
            } else {
                CliError::Config(list.join("; "))
            }
        }
        AnalyticError::Model(HetNetError::Numerical(_)) => CliError::Numerical(format!("{scheme}: {e}")),
        other => CliError::Config(format!("{scheme}: {other}")),
    }
}

fn sim_error(e: SimError) -> CliError {
    match e {
        SimError::Io(m) => CliError::Io(std::io::Error::other(m)),
        SimError::Model(HetNetError::Numerical(_)) => CliError::Numerical(e.to_string()),
        other => CliError::Config(other.to_string()),
    }
}

/// Analytic coverage curve of one scheme, thresholds in dB.
pub(crate) fn analytic_curve(net: &NetworkConfig, scheme: Scheme, thresholds_db: &[f64], rate_loss: bool) -> Result<Vec<(f64, f64, f64)>> {
    let lin: Vec<f64> = thresholds_db.iter().map(|&d| db_to_linear(d)).collect();
    let q = CoverageQuery::new(net.clone(), lin, scheme, rate_loss).map_err(|e| analytic_error(scheme, thresholds_db, e))?;
    let c = evaluate_curve(&q).map_err(|e| analytic_error(scheme, thresholds_db, e))?;
    Ok(thresholds_db
        .iter()
        .zip(c.points.iter().zip(&c.est_abs_error))
        .map(|(&db, (&(_, p), &err))| (db, p, err))
        .collect())
}

/// Analytic coverage of every scheme of the scenario.
pub fn cmd_coverage(sc: &Scenario) -> Result<ResultTable> {
    let net = sc.network()?;
    let db = sc.grid.thresholds_db();
    let mut table = ResultTable::new(Metadata::new(sc.hash(), None));
    for name in &sc.schemes {
        let scheme = analytic_scheme(name)?;
        for (t, p, err) in analytic_curve(&net, scheme, &db, sc.rate_loss)? {
            table.rows.push(Row {
                scheme: scheme.name().to_string(),
                threshold_db: t,
                p_cov: p,
                est_error: err,
                method: Method::Analytic.name().to_string(),
            });
        }
    }
    table.validate()?;
    Ok(table)
}

fn simulate_raw(sc: &Scenario) -> Result<(Vec<SimScheme>, hetdiv_montecarlo::SimResult)> {
    let schemes: Vec<SimScheme> = sc.schemes.iter().map(|s| sim_scheme(s)).collect::<Result<_>>()?;
    let cfg = sc.sim_config(schemes.clone())?;
    let res = run(&cfg).map_err(sim_error)?;
    Ok((schemes, res))
}

/// Monte Carlo coverage of every scheme; the error column is the one-sigma
/// Wilson half-width.
pub fn cmd_simulate(sc: &Scenario) -> Result<(ResultTable, Option<MomentReport>)> {
    let (_, res) = simulate_raw(sc)?;
    let db = sc.grid.thresholds_db();
    let mut table = ResultTable::new(Metadata::new(sc.hash(), Some(sc.sim.seed)));
    for c in &res.curves {
        for (p, &t) in c.points.iter().zip(&db) {
            table.rows.push(Row {
                scheme: c.scheme.name().to_string(),
                threshold_db: t,
                p_cov: p.coverage,
                est_error: p.wilson_se,
                method: Method::Simulated.name().to_string(),
            });
        }
    }
    table.validate()?;
    Ok((table, res.moments))
}

/// Simulated curves joined with their analytic counterparts.
pub fn cmd_compare(sc: &Scenario) -> Result<(Metadata, Vec<ComparisonRow>)> {
    let net = sc.network()?;
    let db = sc.grid.thresholds_db();
    let (schemes, res) = simulate_raw(sc)?;
    let mut rows = Vec::new();
    for (s, c) in schemes.iter().zip(&res.curves) {
        let a = analytic_curve(&net, oracle_of(*s), &db, sc.rate_loss)?;
        for ((t, p, _), sp) in a.into_iter().zip(&c.points) {
            rows.push(ComparisonRow {
                scheme: s.name().to_string(),
                threshold_db: t,
                p_analytic: p,
                p_simulated: sp.coverage,
                wilson_se: sp.wilson_se,
            });
        }
    }
    Ok((Metadata::new(sc.hash(), Some(sc.sim.seed)), rows))
}

/// Empirical interference moments next to the closed forms, which exist
/// when all tiers share the path-loss exponent and the number of active
/// antennas.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary {
    pub metadata: Metadata,
    pub report: MomentReport,
    pub variance_closed_form: Option<f64>,
    pub correlation_closed_form: Option<f64>,
}

impl MomentSummary {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        write_metadata(&mut out, &self.metadata)?;
        let mut w = csv_writer(out);
        w.write_record(["quantity", "empirical", "closed_form"])?;
        let opt = |x: Option<f64>| x.map_or_else(String::new, fmt_f64);
        let r = &self.report;
        w.write_record(["samples".to_string(), r.samples.to_string(), String::new()])?;
        w.write_record(["mean".to_string(), fmt_f64(r.mean), String::new()])?;
        w.write_record(["variance".to_string(), fmt_f64(r.variance), opt(self.variance_closed_form)])?;
        w.write_record(["variance_se".to_string(), fmt_f64(r.variance_se), String::new()])?;
        w.write_record(["covariance".to_string(), opt(r.covariance), String::new()])?;
        w.write_record(["correlation".to_string(), opt(r.correlation), opt(self.correlation_closed_form)])?;
        w.flush()?;
        Ok(())
    }
}

/// Interference moments from `sim.iterations` drops.
pub fn cmd_moments(sc: &Scenario) -> Result<MomentSummary> {
    let net = sc.network()?;
    let report = interference_moments(&net, sc.sim.iterations, sc.sim.mean_bs_per_tier, sc.sim.seed).map_err(sim_error)?;
    let t0 = net.tier(0);
    let uniform = net
        .tiers()
        .iter()
        .all(|t| t.path_loss_exp == t0.path_loss_exp && t.s_active() == t0.s_active());
    let (var, rho) = if uniform {
        let v = interference_variance(t0.path_loss_exp, t0.s_active()).map_err(|e| CliError::Config(e.to_string()))?;
        (Some(v), (net.rx_antennas() >= 2).then(|| interference_correlation(t0.s_active())))
    } else {
        (None, None)
    };
    Ok(MomentSummary {
        metadata: Metadata::new(sc.hash(), Some(sc.sim.seed)),
        report,
        variance_closed_form: var,
        correlation_closed_form: rho,
    })
}
