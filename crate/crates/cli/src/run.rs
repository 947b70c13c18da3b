use std::fmt::Write as _;

use anyhow::{Context, Result};
use serde_json::{json, Value};

use qgreen_core::expr::parse_element;
use qgreen_core::green::{green_minus, green_plus, Route};
use qgreen_core::presentation::{
    cartan_matrix, chevalley_presentation, classical_presentation, green_presentation, Presentation, RankParams,
};
use qgreen_core::rewrite::{RewriteSystem, Status, DEFAULT_MAX_RULES};
use qgreen_core::verify::{self, FockConvention, MatrixRep, SymbolicConfig, VerificationReport};

use crate::args::{Cli, Cmd, ConventionArg, FlavorArg, FockArgs, Format, SideArg, Suite};
use crate::config::RunConfig;

fn emit(cfg: &RunConfig, body: &str) -> Result<()> {
    match &cfg.out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn presentation(flavor: FlavorArg, rank: RankParams) -> Presentation {
    match flavor {
        FlavorArg::Chevalley => chevalley_presentation(rank),
        FlavorArg::Green => green_presentation(rank),
        FlavorArg::Classical => classical_presentation(rank),
    }
}

fn fock_args(cmd: &Cmd) -> Option<&FockArgs> {
    match cmd {
        Cmd::Rep { fock } => Some(fock),
        Cmd::Verify { suite: Suite::Rep { args, .. } } => Some(args),
        _ => None,
    }
}

fn convention(c: ConventionArg) -> FockConvention {
    match c {
        ConventionArg::Literal => FockConvention::Literal,
        ConventionArg::Qklein => FockConvention::QKlein,
    }
}

pub fn dispatch(cli: Cli) -> Result<u8> {
    let cfg = RunConfig::load(&cli.global, fock_args(&cli.cmd))?;
    let rank = RankParams::new(cfg.m, cfg.n)?;
    match cli.cmd {
        Cmd::Cartan => cartan(&cfg, rank),
        Cmd::Green { index, side, route } => green(&cfg, rank, index, side, &route),
        Cmd::Presentation { flavor } => {
            let p = presentation(flavor, rank);
            let out = match cfg.format_or(Format::Text) {
                Format::Json => pretty(&p.to_json()),
                Format::Text => p.relations.iter().fold(String::new(), |mut s, r| {
                    let _ = writeln!(s, "{:<28} {}", r.tag, r.body);
                    s
                }),
            };
            emit(&cfg, &out)?;
            Ok(0)
        }
        Cmd::Reduce { presentation: flavor, expr, trace } => reduce(&cfg, rank, flavor, &expr, trace),
        Cmd::Verify { suite } => {
            let rep = run_suite(&cfg, rank, suite)?;
            let out = match cfg.format_or(Format::Json) {
                Format::Json => pretty(&serde_json::to_value(&rep)?),
                Format::Text => rep.to_text(),
            };
            emit(&cfg, &out)?;
            Ok(rep.exit_code() as u8)
        }
        Cmd::Rep { fock } => {
            cfg.check_numeric()?;
            let rep = build_fock(&cfg, rank, &fock)?;
            emit(&cfg, &render_rep(&rep, cfg.format_or(Format::Json)))?;
            Ok(0)
        }
    }
}

fn cartan(cfg: &RunConfig, rank: RankParams) -> Result<u8> {
    let a = cartan_matrix(rank);
    let out = match cfg.format_or(Format::Text) {
        Format::Json => pretty(&json!({ "m": rank.m, "n": rank.n, "matrix": a })),
        Format::Text => {
            let w = a.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
            a.iter().fold(String::new(), |mut s, row| {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>w$}")).collect();
                let _ = writeln!(s, "{}", cells.join(" "));
                s
            })
        }
    };
    emit(cfg, &out)?;
    Ok(0)
}

fn green(cfg: &RunConfig, rank: RankParams, index: Option<usize>, side: Option<SideArg>, route: &str) -> Result<u8> {
    let route: Route = route.parse()?;
    let indices: Vec<usize> = match index {
        Some(i) => vec![i],
        None => (1..=rank.N()).collect(),
    };
    let sides = match side {
        Some(s) => vec![s],
        None => vec![SideArg::Minus, SideArg::Plus],
    };
    let mut rows = Vec::new();
    for &i in &indices {
        for &s in &sides {
            let (g, x) = match s {
                SideArg::Minus => (format!("a{i}-"), green_minus(rank, i, route)?),
                SideArg::Plus => (format!("a{i}+"), green_plus(rank, i, route)?),
            };
            rows.push((g, x.body));
        }
    }
    let out = match cfg.format_or(Format::Text) {
        Format::Json => pretty(&Value::Array(
            rows.iter()
                .map(|(g, b)| json!({ "generator": g, "route": route_name(route), "body": b.to_string() }))
                .collect(),
        )),
        Format::Text => rows.iter().fold(String::new(), |mut s, (g, b)| {
            let _ = writeln!(s, "{g} = {b}");
            s
        }),
    };
    emit(cfg, &out)?;
    Ok(0)
}

fn route_name(r: Route) -> String {
    match r {
        Route::Direct => "direct".to_string(),
        Route::Rec14(j) => format!("rec14:{j}"),
        Route::Split15(j) => format!("split15:{j}"),
    }
}

fn reduce(cfg: &RunConfig, rank: RankParams, flavor: FlavorArg, text: &str, trace: bool) -> Result<u8> {
    let x = parse_element(text, rank)?;
    let rs = RewriteSystem::orient(&presentation(flavor, rank))?.complete(cfg.degree_bound, DEFAULT_MAX_RULES);
    let outcome = rs.reduce(&x, cfg.degree_bound, trace);
    let mut out = String::new();
    if let Some(steps) = &outcome.trace {
        for s in steps {
            let line = json!({
                "step": s.step,
                "rule": s.rule_tag,
                "rule_id": s.rule,
                "position": s.position,
                "word": s.word.to_string(),
                "coeff": s.coeff.to_string(),
            });
            let _ = writeln!(out, "{line}");
        }
    }
    let status = match outcome.status {
        Status::Zero => "zero",
        Status::NormalForm => "normal_form",
        Status::Inconclusive => "inconclusive",
    };
    match cfg.format_or(Format::Text) {
        Format::Json => {
            let v = json!({
                "status": status,
                "result": outcome.result.to_string(),
                "steps": outcome.steps,
                "rules": rs.len(),
                "completion": rs.meta,
            });
            out.push_str(&pretty(&v));
        }
        Format::Text => match outcome.status {
            Status::Zero => out.push_str("zero\n"),
            Status::NormalForm => {
                let _ = writeln!(out, "{}", outcome.result);
            }
            Status::Inconclusive => {
                let _ = writeln!(out, "inconclusive: {}", outcome.result);
            }
        },
    }
    emit(cfg, &out)?;
    Ok(if outcome.status == Status::Inconclusive { 2 } else { 0 })
}

fn build_fock(cfg: &RunConfig, rank: RankParams, f: &FockArgs) -> Result<MatrixRep> {
    let mut rep = verify::build_fock_rep(rank, cfg.cutoff, cfg.v, convention(f.convention))?;
    if let Some(t) = cfg.tolerance {
        rep.tolerance = t;
    }
    Ok(rep)
}

fn run_suite(cfg: &RunConfig, rank: RankParams, suite: Suite) -> Result<VerificationReport> {
    let sym = SymbolicConfig { degree_bound: cfg.degree_bound, ..SymbolicConfig::default() };
    let mut rep = match suite {
        Suite::Identities => verify::check_identities()?,
        Suite::GreenFromChevalley => verify::check_green_from_chevalley(rank, sym)?,
        Suite::ChevalleyFromGreen => verify::check_chevalley_from_green(rank, sym)?,
        Suite::RoundTrip => verify::check_round_trip(rank, sym)?,
        Suite::ClassicalLimit => verify::check_classical_limit(rank)?,
        Suite::Rep { fock, presentation: flavor, args } => {
            let mut m = if fock {
                cfg.check_numeric()?;
                build_fock(cfg, rank, &args)?
            } else {
                let mut t = verify::build_trivial_rep(rank);
                if let Some(tol) = cfg.tolerance {
                    t.tolerance = tol;
                }
                t
            };
            if flavor == FlavorArg::Chevalley && fock {
                m = m.with_chevalley_images()?;
            }
            let mut rep = verify::check_rep(&m, &presentation(flavor, rank))?;
            if fock {
                rep.meta["classical_residual"] = json!(verify::classical_residual(&m)?);
                rep.meta["convention"] = json!(match args.convention {
                    ConventionArg::Literal => "literal",
                    ConventionArg::Qklein => "qklein",
                });
            }
            rep
        }
    };
    if let Some(seed) = cfg.seed {
        if rep.meta.is_null() {
            rep.meta = json!({});
        }
        rep.meta["seed"] = json!(seed);
    }
    Ok(rep)
}

fn render_rep(rep: &MatrixRep, format: Format) -> String {
    let mut gens: Vec<_> = rep.mats.keys().copied().collect();
    gens.sort();
    let entries = |g| -> Vec<(usize, usize, f64, f64)> {
        let m = &rep.mats[&g];
        m.indexed_iter().filter(|(_, z)| z.norm() > 0.0).map(|((r, c), z)| (r, c, z.re, z.im)).collect()
    };
    match format {
        Format::Json => {
            let mats: serde_json::Map<String, Value> = gens
                .iter()
                .map(|g| {
                    let e: Vec<Value> = entries(*g).into_iter().map(|(r, c, re, im)| json!([r, c, re, im])).collect();
                    (g.to_string(), Value::Array(e))
                })
                .collect();
            pretty(&json!({ "label": rep.label, "dim": rep.dim, "v": rep.v, "tolerance": rep.tolerance, "entries": mats }))
        }
        Format::Text => {
            let mut s = format!("{} dim {} v {}\n", rep.label, rep.dim, rep.v);
            for g in gens {
                let _ = writeln!(s, "{g}:");
                for (r, c, re, im) in entries(g) {
                    if im == 0.0 {
                        let _ = writeln!(s, "  [{r},{c}] {re:.12}");
                    } else {
                        let _ = writeln!(s, "  [{r},{c}] {re:.12}{im:+.12}i");
                    }
                }
            }
            s
        }
    }
}
