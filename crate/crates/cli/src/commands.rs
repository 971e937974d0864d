//! One function per subcommand. Each writes its report to `out` and returns
//! the exit code.

use std::collections::BTreeMap;
use std::io::Write;

use eulerian::algebra::RatFrac;
use eulerian::carlitz::Carlitz;
use eulerian::criterion::{
    check_suffix_consistency, default_zeta_like_bound, is_cmpl_eulerian, is_eulerian, is_zeta_like, Verdict,
};
use eulerian::families::{compare_sweep, predicted_eulerian, CONJECTURAL};
use eulerian::motive::MotiveSpec;
use eulerian::oracle::{identities, verify_verdict, Consistency, SeriesContext};
use eulerian::sweep::{self, is_primitive, Range};
use serde_json::json;

use crate::cache::HCache;
use crate::config::{Format, RunConfig, SweepSpec, Task};
use crate::store::{self, Manifest, ZetaLikeRecord};
use crate::{CliResult, EXIT_EULERIAN, EXIT_INTERNAL, EXIT_NON_EULERIAN, EXIT_OK};

pub fn execute(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<i32> {
    let carlitz = Carlitz::new(&cfg.field);
    let cache = match cfg.task {
        Task::Families { .. } | Task::Cmpl { .. } | Task::Bc(_) => None,
        _ => HCache::open(&carlitz)?,
    };
    let code = match &cfg.task {
        Task::Check(s) => check(cfg, &carlitz, s, out)?,
        Task::Sweep(spec) => sweep(cfg, &carlitz, spec, out)?,
        Task::Tmodule(s) => tmodule(cfg, &carlitz, s, out)?,
        Task::Zetalike { tuple, bound } => zetalike(cfg, &carlitz, tuple, *bound, out)?,
        Task::OracleZeta(s) => oracle_zeta(cfg, s, out)?,
        Task::OracleVerify(s) => oracle_verify(cfg, &carlitz, s, out)?,
        Task::OracleIdentities => oracle_identities(cfg, &carlitz, out)?,
        Task::Families { wmax, rmax } => families(cfg, *wmax, *rmax, out)?,
        Task::AtPoly(n) => at_poly(cfg, &carlitz, *n, out)?,
        Task::Bc(n) => bc(cfg, &carlitz, *n, out)?,
        Task::Cmpl { tuple, u } => cmpl(cfg, tuple, u, out)?,
    };
    if let Some(c) = cache {
        c.save(&carlitz)?;
    }
    Ok(code)
}

fn paren(s: &[u32]) -> String {
    let parts: Vec<String> = s.iter().map(u32::to_string).collect();
    format!("({})", parts.join(", "))
}

fn verdict_text(v: &Verdict, out: &mut dyn Write) -> CliResult<()> {
    let what = if v.eulerian { "Eulerian" } else { "non-Eulerian" };
    let cond = if v.conditional { " (conditional)" } else { "" };
    writeln!(out, "{} over F_{}: {what}{cond}", paren(&v.tuple), v.q)?;
    writeln!(out, "  weight {}, depth {}", v.weight, v.depth)?;
    if let Some(p) = &v.precheck {
        writeln!(out, "  decided by precheck: {p}")?;
    } else {
        if v.tested_tuple != v.tuple {
            writeln!(out, "  tested {} (primitive reduction)", paren(&v.tested_tuple))?;
        }
        writeln!(out, "  annihilator degree {}", v.annihilator_degree)?;
    }
    if let Some(u) = &v.u {
        writeln!(out, "  u = ({})", u.join(", "))?;
    }
    writeln!(out, "  {} ms", v.elapsed_ms)?;
    Ok(())
}

fn emit_verdict(cfg: &RunConfig, v: &Verdict, out: &mut dyn Write) -> CliResult<()> {
    match cfg.format {
        Format::Text => verdict_text(v, out)?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(v)?)?,
        Format::Csv => store::write_verdict_csv(&mut *out, std::slice::from_ref(v))?,
    }
    Ok(())
}

fn options_json(cfg: &RunConfig) -> serde_json::Value {
    json!({ "precheck": cfg.options.precheck, "primitive_reduction": cfg.options.primitive_reduction })
}

fn check(cfg: &RunConfig, c: &Carlitz, s: &[u32], out: &mut dyn Write) -> CliResult<i32> {
    let v = is_eulerian(c, s, cfg.options)?;
    emit_verdict(cfg, &v, out)?;
    if let Some(path) = &cfg.out {
        let settings = json!({ "tuple": s, "options": options_json(cfg) });
        store::write_store(path, &Manifest::new(&cfg.field, "check", settings, 1), std::slice::from_ref(&v))?;
    }
    Ok(if v.eulerian { EXIT_EULERIAN } else { EXIT_NON_EULERIAN })
}

fn sweep(cfg: &RunConfig, c: &Carlitz, spec: &SweepSpec, out: &mut dyn Write) -> CliResult<i32> {
    let f = &cfg.field;
    let mut range = Range::new(f.q(), f.p(), spec.wmax, spec.rmax).min_depth(spec.min_depth);
    range.divisible_only = !spec.all_entries;
    if spec.primitive_only {
        range = range.primitive();
    }
    let tuples = sweep::enumerate(&range);
    let mut verdicts = sweep::run(c, &tuples, cfg.options, cfg.jobs)?;
    verdicts.sort_by(|a, b| (a.weight, a.depth, &a.tuple).cmp(&(b.weight, b.depth, &b.tuple)));

    if let Some(path) = &cfg.out {
        let settings = json!({
            "wmax": spec.wmax,
            "rmax": spec.rmax,
            "min_depth": spec.min_depth,
            "primitive_only": spec.primitive_only,
            "all_entries": spec.all_entries,
            "options": options_json(cfg),
        });
        let manifest = Manifest::new(f, "sweep", settings, verdicts.len());
        store::write_store(path, &manifest, &verdicts)?;
        store::write_verdict_csv(std::fs::File::create(store::csv_path(path))?, &verdicts)?;
    }

    let map: BTreeMap<Vec<u32>, bool> = verdicts.iter().map(|v| (v.tuple.clone(), v.eulerian)).collect();
    let violations = if spec.suffix_check { Some(check_suffix_consistency(&map)?) } else { None };
    let report = if spec.compare {
        Some(compare_sweep(f.q(), f.p(), spec.wmax, spec.rmax, &map)?)
    } else {
        None
    };
    let eulerian = verdicts.iter().filter(|v| v.eulerian).count();
    let headline: Vec<&Vec<u32>> = verdicts
        .iter()
        .filter(|v| v.eulerian && v.depth >= 2 && is_primitive(f.p(), &v.tuple))
        .map(|v| &v.tuple)
        .collect();

    match cfg.format {
        Format::Csv => store::write_verdict_csv(&mut *out, &verdicts)?,
        Format::Json => {
            let summary = json!({
                "q": f.q(),
                "tuples": verdicts.len(),
                "eulerian": eulerian,
                "primitive_eulerian_depth_ge_2": headline,
                "suffix_violations": violations,
                "comparison": report,
            });
            writeln!(out, "{summary}")?;
        }
        Format::Text => {
            writeln!(
                out,
                "swept {} tuples over F_{} (weight <= {}, depth {}..={}): {} Eulerian",
                verdicts.len(),
                f.q(),
                spec.wmax,
                spec.min_depth.max(1),
                spec.rmax,
                eulerian
            )?;
            let list: Vec<String> = headline.iter().map(|s| paren(s)).collect();
            writeln!(out, "primitive Eulerian, depth >= 2: {}", list.len())?;
            for s in list {
                writeln!(out, "  {s}")?;
            }
            if let Some(v) = &violations {
                writeln!(out, "suffix check: {} violations", v.len())?;
                for s in v {
                    writeln!(out, "  {}", paren(s))?;
                }
            }
            if let Some(r) = &report {
                let verdict = if r.agrees() { "agrees" } else { "disagrees" };
                writeln!(out, "families [{CONJECTURAL}]: {verdict} ({} matches)", r.matches.len())?;
                for s in &r.false_positives {
                    writeln!(out, "  unpredicted Eulerian {}", paren(s))?;
                }
                for s in &r.false_negatives {
                    writeln!(out, "  predicted but non-Eulerian {}", paren(s))?;
                }
            }
            if let Some(p) = &cfg.out {
                writeln!(out, "store: {}", p.display())?;
            }
        }
    }
    Ok(match violations {
        Some(v) if !v.is_empty() => EXIT_INTERNAL,
        _ => EXIT_OK,
    })
}

fn tmodule(cfg: &RunConfig, c: &Carlitz, s: &[u32], out: &mut dyn Write) -> CliResult<i32> {
    let m = MotiveSpec::mzv(c, s)?;
    let rho = m.reduce_operator()?;
    let v = m.special_point_v()?;
    match cfg.format {
        Format::Json => {
            let coords: Vec<String> = v.coords().iter().map(|x| x.to_string()).collect();
            let j = json!({ "d": rho.dim(), "rho_t": rho.render_rows(), "v": coords });
            writeln!(out, "{j}")?;
        }
        _ => {
            writeln!(out, "{} over F_{}, d = {}", paren(s), cfg.field.q(), rho.dim())?;
            writeln!(out, "rho_t =")?;
            write!(out, "{rho}")?;
            writeln!(out, "v = {v}")?;
        }
    }
    Ok(EXIT_OK)
}

fn zetalike(cfg: &RunConfig, c: &Carlitz, s: &[u32], bound: Option<usize>, out: &mut dyn Write) -> CliResult<i32> {
    let w: u64 = s.iter().map(|&x| x as u64).sum();
    let bound = bound.unwrap_or_else(|| default_zeta_like_bound(cfg.field.q(), w));
    let z = is_zeta_like(c, s, bound)?;
    let rec = ZetaLikeRecord::from(&z);
    match cfg.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&rec)?)?,
        Format::Csv => store::write_zetalike_csv(&mut *out, &rec)?,
        Format::Text => {
            let answer = match rec.zeta_like {
                Some(true) => "zeta-like",
                Some(false) => "not zeta-like",
                None => "undecided",
            };
            writeln!(out, "{} over F_{}: {answer} [{}]", paren(s), rec.q, rec.outcome)?;
            if let (Some(a), Some(b)) = (&rec.witness_a, &rec.witness_b) {
                writeln!(out, "  a = {a}")?;
                writeln!(out, "  b = {b}")?;
            }
            if let Some(e) = rec.eulerian {
                writeln!(out, "  Eulerian = {e}")?;
            }
            if let Some(suf) = &rec.suffix {
                writeln!(out, "  suffix {} is not Eulerian", paren(suf))?;
            }
            writeln!(out, "  bound {}, search dimension {}", rec.bound, rec.search_dimension)?;
        }
    }
    if let Some(path) = &cfg.out {
        let settings = json!({ "tuple": s, "bound": bound });
        store::write_store(path, &Manifest::new(&cfg.field, "zetalike", settings, 1), &[rec])?;
    }
    Ok(EXIT_OK)
}

fn oracle_zeta(cfg: &RunConfig, s: &[u32], out: &mut dyn Write) -> CliResult<i32> {
    let ctx = SeriesContext::new(&cfg.field, cfg.prec);
    let z = ctx.zeta_laurent(s)?;
    match cfg.format {
        Format::Json => {
            let j = json!({ "tuple": s, "precision": cfg.prec, "value": z.to_string() });
            writeln!(out, "{j}")?;
        }
        _ => writeln!(out, "zeta{} = {z}", paren(s))?,
    }
    Ok(EXIT_OK)
}

fn oracle_verify(cfg: &RunConfig, c: &Carlitz, s: &[u32], out: &mut dyn Write) -> CliResult<i32> {
    let v = is_eulerian(c, s, cfg.options)?;
    let ctx = SeriesContext::new(&cfg.field, cfg.prec);
    let res = verify_verdict(&ctx, c, s, v.eulerian)?;
    match cfg.format {
        Format::Json => {
            let j = json!({ "tuple": s, "eulerian": v.eulerian, "consistency": res });
            writeln!(out, "{j}")?;
        }
        _ => {
            let what = if v.eulerian { "Eulerian" } else { "non-Eulerian" };
            writeln!(out, "{}: {what}", paren(s))?;
            match &res {
                Consistency::Consistent {
                    ratio,
                    precision,
                    pi_ratio,
                } => {
                    writeln!(out, "  consistent at precision {precision}")?;
                    writeln!(out, "  zeta(s)/zeta(w) = {ratio}")?;
                    writeln!(out, "  zeta(s)/pi^w = {pi_ratio}")?;
                }
                Consistency::Inconsistent { reason } => writeln!(out, "  INCONSISTENT: {reason}")?,
                Consistency::Inconclusive { reason } => {
                    writeln!(out, "  inconclusive: {}", serde_json::to_value(reason)?.as_str().unwrap_or("?"))?
                }
            }
        }
    }
    Ok(match res {
        Consistency::Inconsistent { .. } => EXIT_INTERNAL,
        _ => EXIT_OK,
    })
}

fn oracle_identities(cfg: &RunConfig, c: &Carlitz, out: &mut dyn Write) -> CliResult<i32> {
    let ctx = SeriesContext::new(&cfg.field, cfg.prec);
    let results = identities(&ctx, c)?;
    match cfg.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&results)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["name", "precision", "holds"])?;
            for r in &results {
                w.write_record([r.name.clone(), r.precision.to_string(), r.holds.to_string()])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in &results {
                let mark = if r.holds { "ok  " } else { "FAIL" };
                writeln!(out, "{mark} {} (N = {})", r.name, r.precision)?;
            }
            let held = results.iter().filter(|r| r.holds).count();
            writeln!(out, "{held}/{} identities hold", results.len())?;
        }
    }
    Ok(if results.iter().all(|r| r.holds) { EXIT_OK } else { EXIT_INTERNAL })
}

fn families(cfg: &RunConfig, wmax: u32, rmax: usize, out: &mut dyn Write) -> CliResult<i32> {
    let q = cfg.field.q();
    let list = predicted_eulerian(q, wmax, rmax);
    match cfg.format {
        Format::Json => {
            let j = json!({ "status": CONJECTURAL, "q": q, "wmax": wmax, "rmax": rmax, "tuples": list });
            writeln!(out, "{j}")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["tuple", "weight", "depth", "kind"])?;
            for f in &list {
                w.write_record([store::tuple_string(&f.tuple), f.weight.to_string(), f.depth.to_string(), f.kind.clone()])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(
                out,
                "{CONJECTURAL}: predicted primitive Eulerian tuples over F_{q}, weight <= {wmax}, depth 2..={rmax}"
            )?;
            for f in &list {
                writeln!(out, "  {f}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn at_poly(cfg: &RunConfig, c: &Carlitz, n: usize, out: &mut dyn Write) -> CliResult<i32> {
    let h = c.anderson_thakur(n)?;
    match cfg.format {
        Format::Json => writeln!(out, "{}", json!({ "n": n, "h": h.to_string() }))?,
        _ => writeln!(out, "H_{n} = {h}")?,
    }
    Ok(EXIT_OK)
}

fn bc(cfg: &RunConfig, c: &Carlitz, n: usize, out: &mut dyn Write) -> CliResult<i32> {
    let b = c.bernoulli_carlitz(n);
    match cfg.format {
        Format::Json => writeln!(out, "{}", json!({ "n": n, "bc": b.to_string() }))?,
        _ => writeln!(out, "BC({n}) = {b}")?,
    }
    Ok(EXIT_OK)
}

fn cmpl(cfg: &RunConfig, s: &[u32], u: &[RatFrac], out: &mut dyn Write) -> CliResult<i32> {
    let v = is_cmpl_eulerian(&cfg.field, s, u)?;
    emit_verdict(cfg, &v, out)?;
    Ok(EXIT_OK)
}
