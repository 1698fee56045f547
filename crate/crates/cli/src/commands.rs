use std::fs::File;
use std::io::{BufWriter, Write};

use interest_core::bank::{
    lending_rate, two_term_limit_check, BankParams, ReserveRule, DEFAULT_FAILURE_TOLERANCE,
};
use interest_core::cliometrics::{estimate, generate_panel, IdentificationReport};
use interest_core::consumer::{
    savings_response, solve_consumption, wealth, Endowment, Preferences, UtilityFamily,
};
use interest_core::credit::{risk_premium_first_order, risky_rate_exact, DefaultRisk};
use interest_core::portfolio::solve_portfolio;

use crate::cli::{AgentArgs, Cli, Command, PriceArgs, SolveArgs, SweepArgs, UtilityKind};
use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::output::{Cell, Format, Table};
use crate::panel_csv::write_panel;

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let (table, default_format) = match &cli.command {
        Command::Solve(args) => (solve(args)?, Format::Table),
        Command::Sweep(args) => (sweep(args)?, Format::Csv),
        Command::Portfolio(args) => (portfolio(args)?, Format::Table),
        Command::Price(args) => (price(args)?, Format::Table),
        Command::Experiment(args) => {
            let mut config = ExperimentConfig::load(&args.config)?.regime;
            if let Some(seed) = cli.seed {
                config.seed = seed;
            }
            let panel = generate_panel(&config)?;
            let report = estimate(&panel)?;
            if let Some(path) = &args.panel_out {
                let mut file = BufWriter::new(File::create(path)?);
                write_panel(&panel.rows, &mut file)?;
                file.flush()?;
            }
            (report_table(&report), Format::Json)
        }
    };

    let format = cli.format.unwrap_or(default_format);
    match &cli.output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            table.render(format, &mut file)?;
            file.flush()?;
        }
        None => table.render(format, stdout)?,
    }
    Ok(())
}

fn agent(args: &AgentArgs) -> Result<(Preferences, Endowment), CliError> {
    let utility = match (args.utility, args.sigma) {
        (UtilityKind::Log, None) => UtilityFamily::Log,
        (UtilityKind::Log, Some(_)) => {
            return Err(CliError::Input(
                "--sigma only applies to --utility ies".into(),
            ))
        }
        (UtilityKind::Ies, Some(sigma)) => UtilityFamily::constant_ies(sigma)?,
        (UtilityKind::Ies, None) => {
            return Err(CliError::Input("--utility ies needs --sigma".into()))
        }
    };
    Ok((
        Preferences::new(args.rho, utility)?,
        Endowment::new(args.m1, args.m2)?,
    ))
}

fn check_rate(r: f64) -> Result<(), CliError> {
    if r > -1.0 && r.is_finite() {
        Ok(())
    } else {
        Err(CliError::Input(format!(
            "interest rate must exceed -1, got {r}"
        )))
    }
}

fn solve(args: &SolveArgs) -> Result<Table, CliError> {
    let (prefs, endow) = agent(&args.agent)?;
    check_rate(args.r)?;
    let a = solve_consumption(&prefs, &endow, args.r)?;
    Ok(Table::record(vec![
        ("r", Cell::Num(args.r)),
        ("wealth", Cell::Num(wealth(&endow, args.r))),
        ("c1", Cell::Num(a.c1)),
        ("c2", Cell::Num(a.c2)),
        ("s", Cell::Num(a.savings)),
    ]))
}

fn sweep(args: &SweepArgs) -> Result<Table, CliError> {
    let (prefs, endow) = agent(&args.agent)?;
    if args.r_steps == 0 {
        return Err(CliError::Input("--r-steps must be at least 1".into()));
    }
    check_rate(args.r_from)?;
    check_rate(args.r_to)?;
    let span = args.r_to - args.r_from;
    let mut rows = Vec::with_capacity(args.r_steps);
    for i in 0..args.r_steps {
        let r = if args.r_steps == 1 {
            args.r_from
        } else {
            args.r_from + span * i as f64 / (args.r_steps - 1) as f64
        };
        let a = solve_consumption(&prefs, &endow, r)?;
        let ds_dr = savings_response(&prefs, &endow, r)?;
        rows.push(vec![
            Cell::Num(r),
            Cell::Num(a.c1),
            Cell::Num(a.c2),
            Cell::Num(a.savings),
            Cell::Num(ds_dr),
        ]);
    }
    Ok(Table {
        columns: vec!["r", "c1", "c2", "s", "ds_dr"],
        rows,
    })
}

fn portfolio(args: &SolveArgs) -> Result<Table, CliError> {
    let (prefs, endow) = agent(&args.agent)?;
    let p = solve_portfolio(&prefs, &endow, args.r)?;
    Ok(Table::record(vec![
        ("r", Cell::Num(args.r)),
        ("c1", Cell::Num(p.c1)),
        ("c2", Cell::Num(p.c2)),
        ("cash", Cell::Num(p.cash)),
        ("bonds", Cell::Num(p.bonds)),
        ("kkt_mu", Cell::Num(p.kkt_mu)),
        ("kkt_nu", Cell::Num(p.kkt_nu)),
    ]))
}

/// Parses `linear:<ratio>` or `binomial:<q>[:<epsilon>[:<note_unit>]]`.
pub fn parse_reserve_rule(spec: &str) -> Result<ReserveRule, CliError> {
    let bad = || CliError::Input(format!("invalid --reserve `{spec}`"));
    let mut parts = spec.split(':');
    let kind = parts.next().ok_or_else(bad)?;
    let nums: Vec<f64> = parts
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let rule = match (kind, nums.as_slice()) {
        ("linear", [ratio]) => ReserveRule::linear(*ratio)?,
        ("binomial", [q]) => ReserveRule::binomial(*q, DEFAULT_FAILURE_TOLERANCE, 1.0)?,
        ("binomial", [q, eps]) => ReserveRule::binomial(*q, *eps, 1.0)?,
        ("binomial", [q, eps, unit]) => ReserveRule::binomial(*q, *eps, *unit)?,
        _ => return Err(bad()),
    };
    Ok(rule)
}

fn price(args: &PriceArgs) -> Result<Table, CliError> {
    let risk = DefaultRisk::new(args.pi, args.lambda)?;
    let exact = risky_rate_exact(args.rf, &risk)?;
    let spread = risk_premium_first_order(&risk);
    let mut fields = vec![
        ("risk_free_rate", Cell::Num(args.rf)),
        ("exact_rate", Cell::Num(exact)),
        ("exact_spread", Cell::Num(exact - args.rf)),
        ("first_order_rate", Cell::Num(args.rf + spread)),
        ("first_order_spread", Cell::Num(spread)),
    ];
    match (args.kappa, args.reserve.as_deref()) {
        (None, None) => {}
        (Some(kappa), Some(reserve)) => {
            let params = BankParams::new(kappa, args.loan, risk, parse_reserve_rule(reserve)?)?;
            let d = lending_rate(args.rf, &params)?;
            fields.extend([
                ("time_preference", Cell::Num(d.time_preference)),
                ("risk_premium", Cell::Num(d.risk_premium)),
                ("phi", Cell::Num(d.phi)),
                ("lending_rate", Cell::Num(d.total)),
                (
                    "two_term_limit",
                    Cell::Bool(two_term_limit_check(args.rf, &params)),
                ),
            ]);
        }
        _ => {
            return Err(CliError::Input(
                "bank pricing needs both --kappa and --reserve".into(),
            ))
        }
    }
    Ok(Table::record(fields))
}

pub fn report_table(report: &IdentificationReport) -> Table {
    Table::record(vec![
        ("kappa_hat", Cell::Num(report.kappa_hat)),
        ("kappa_se", Cell::Num(report.kappa_se)),
        ("default_coef", Cell::Num(report.default_coef)),
        ("condition_number", Cell::Num(report.condition_number)),
        ("identified", Cell::Bool(report.identified)),
    ])
}
