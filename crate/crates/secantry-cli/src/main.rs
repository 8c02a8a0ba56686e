//! Batch command-line surface: secant ideals, Betti tables, blowup fibers,
//! canned example reproductions, and the property self-test.
//!
//! Exit codes: 0 success, 2 resource budget exceeded, 3 certification
//! failure, 4 degenerate random seed, 1 anything else.

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use secantry::betti::{betti_table, regularity_report, BettiOptions};
use secantry::conjectures::check_secant_conjectures;
use secantry::error::Error as CoreError;
use secantry::geometry::{
    blowup_ideal, curve_ideal, fiber_over_point, known_recipes, parse_recipe,
    restrict_secant_to_fiber, secant_fiber_projection_check, CurveData, CurveRecipe,
};
use secantry::groebner::{Budget, Ideal};
use secantry::hilbert::binomial;
use secantry::ideal_ops::truncate_ideal;
use secantry::parse::{ideal_to_string, parse_ideal, poly_to_string};
use secantry::secant::{certify_generation, secant_degree_piece, secant_ideal_elimination};
use secantry::selfcheck;
use secantry::{Fp, MonomialOrder, PrimeField};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "secantry", version, about = "Exact secant-variety toolkit over GF(p)")]
struct Cli {
    /// Field characteristic (an odd prime).
    #[arg(long, global = true, default_value_t = 32003)]
    prime: u32,
    /// Seed for every randomized choice (coordinate changes, CM cuts).
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Monomial order for reported bases: grevlex or lex.
    #[arg(long, global = true, default_value = "grevlex")]
    order: String,
    /// Hard ceiling on S-pair degrees (resource budget, not truncation).
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Betti row window override.
    #[arg(long, global = true)]
    rows: Option<u32>,
    /// Betti column window override.
    #[arg(long, global = true)]
    cols: Option<u32>,
    /// Output format: paper (plain text) or json.
    #[arg(long, global = true, default_value = "paper")]
    format: String,
    /// Worker threads for rank computations (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the k-th secant ideal of a recipe or input ideal.
    Secant {
        #[arg(long)]
        recipe: Option<String>,
        /// Extra recipe arguments (e.g. the degree for `rnc`).
        recipe_args: Vec<String>,
        /// Ideal file in the plain-text format.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// elimination | prolongation
        #[arg(long, default_value = "elimination")]
        via: String,
        /// Expected projective dimension for certification (prolongation).
        #[arg(long)]
        expect_dim: Option<i64>,
        /// Expected degree for certification (prolongation).
        #[arg(long)]
        expect_degree: Option<u64>,
        /// Write the resulting ideal to a file as well.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Betti table of a recipe curve or an input ideal.
    Betti {
        #[arg(long)]
        recipe: Option<String>,
        recipe_args: Vec<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        /// Compute the table of the k-th secant instead of the curve.
        #[arg(long)]
        secant_k: Option<u32>,
    },
    /// Fiber of a blowup over a point, optionally meeting the secant
    /// transform.
    BlowupFiber {
        #[arg(long, default_value = "rnc4")]
        recipe: String,
        /// Comma-separated homogeneous coordinates, e.g. 0,1,0,0,0.
        #[arg(long)]
        point: String,
        /// Chart variable set to 1 (e.g. x_1); omit to stay homogeneous.
        #[arg(long)]
        chart: Option<String>,
        /// Add the secant ideal before reducing.
        #[arg(long, default_value_t = false)]
        secant: bool,
        /// Also run the tangent-projection comparison at this point.
        #[arg(long, default_value_t = false)]
        check_projection: bool,
    },
    /// Canned reproductions of the worked examples.
    Examples {
        #[command(subcommand)]
        what: ExamplesCmd,
    },
    /// Check the secant-variety predictions for a curve.
    Conjectures {
        #[arg(long)]
        recipe: String,
        recipe_args: Vec<String>,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Run the property suites.
    Selftest {
        #[arg(long, default_value_t = 3)]
        effort: usize,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    List,
    Run { name: String },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<CoreError>() {
                Some(CoreError::ResourceExceeded { .. }) | Some(CoreError::IncompleteTable) => 2,
                Some(CoreError::DegenerateSeed { .. }) => 4,
                _ if e.to_string().contains("not certified") => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

struct Ctx {
    field: PrimeField,
    budget: Budget,
    seed: u64,
    json: bool,
    order: MonomialOrder,
    rows: Option<u32>,
    cols: Option<u32>,
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let field = PrimeField::new(cli.prime)?;
    let order = match cli.order.as_str() {
        "grevlex" => MonomialOrder::GrevLex,
        "lex" => MonomialOrder::Lex,
        other => return Err(anyhow!("unknown order `{other}`")),
    };
    let ctx = Ctx {
        field,
        budget: Budget { max_degree: cli.max_degree, ..Budget::default() },
        seed: cli.seed,
        json: match cli.format.as_str() {
            "paper" => false,
            "json" => true,
            other => return Err(anyhow!("unknown format `{other}`")),
        },
        order,
        rows: cli.rows,
        cols: cli.cols,
    };
    match &cli.cmd {
        Cmd::Secant { recipe, recipe_args, input, k, via, expect_dim, expect_degree, out } => {
            cmd_secant(&ctx, recipe.as_deref(), recipe_args, input.as_deref(), *k, via, *expect_dim, *expect_degree, out.as_deref())
        }
        Cmd::Betti { recipe, recipe_args, input, secant_k } => {
            cmd_betti(&ctx, recipe.as_deref(), recipe_args, input.as_deref(), *secant_k)
        }
        Cmd::BlowupFiber { recipe, point, chart, secant, check_projection } => {
            cmd_blowup_fiber(&ctx, recipe, point, chart.as_deref(), *secant, *check_projection)
        }
        Cmd::Examples { what } => match what {
            ExamplesCmd::List => {
                for r in known_recipes() {
                    println!("{r}");
                }
                Ok(())
            }
            ExamplesCmd::Run { name } => cmd_example(&ctx, name),
        },
        Cmd::Conjectures { recipe, recipe_args, k } => {
            cmd_conjectures(&ctx, recipe, recipe_args, *k)
        }
        Cmd::Selftest { effort } => {
            for o in selfcheck::run_all(ctx.seed, *effort)? {
                println!("ok: {} ({} cases)", o.name, o.cases);
            }
            Ok(())
        }
    }
}

fn load_curve(ctx: &Ctx, recipe: Option<&str>, args: &[String], input: Option<&std::path::Path>) -> anyhow::Result<CurveData> {
    match (recipe, input) {
        (Some(name), None) => {
            let r = parse_recipe(name, args, ctx.seed)?;
            Ok(curve_ideal(&r, ctx.field, &ctx.budget)?)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let ideal = parse_ideal(&text)?;
            let hd = secantry::hilbert::hilbert_data(&ideal, 0, &ctx.budget)?;
            Ok(CurveData {
                name: path.display().to_string(),
                expected_dim: hd.projective_dim(),
                expected_degree: hd.degree,
                ideal,
                rnc_degree: None,
                genus: None,
            })
        }
        _ => Err(anyhow!("pass exactly one of --recipe or --input")),
    }
}

/// Expected projective dimension of the k-th secant variety.
fn expected_secant_dim(curve: &CurveData, k: u32) -> i64 {
    let n = curve.ideal.ring().nvars() as i64 - 1;
    if curve.expected_dim == 0 {
        // Point sets: the k-planes themselves.
        (k as i64).min(n)
    } else {
        (2 * k as i64 + 1).min(n)
    }
}

fn expected_secant_degree(curve: &CurveData, k: u32) -> Option<u64> {
    let n = curve.ideal.ring().nvars() as u64 - 1;
    match (curve.rnc_degree, curve.genus, k) {
        (Some(_), _, k) => Some(binomial(n - k as u64, k as u64 + 1)),
        (None, Some(g), 1) => Some((curve.expected_degree - 1) * (curve.expected_degree - 2) / 2 - g),
        _ => None,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_secant(
    ctx: &Ctx,
    recipe: Option<&str>,
    args: &[String],
    input: Option<&std::path::Path>,
    k: u32,
    via: &str,
    expect_dim: Option<i64>,
    expect_degree: Option<u64>,
    out: Option<&std::path::Path>,
) -> anyhow::Result<()> {
    let curve = load_curve(ctx, recipe, args, input)?;
    match via {
        "elimination" => {
            let s = secant_ideal_elimination(&curve.ideal, k, &ctx.budget)?;
            let gb = s.gb(&ctx.order, &ctx.budget)?;
            let pretty = Ideal::new(s.ring(), gb.polys.clone());
            emit_ideal(ctx, &pretty, out)?;
            if gb.polys.is_empty() {
                println!("note: secant ideal is zero; the secant variety fills the ambient space");
            }
            Ok(())
        }
        "prolongation" => {
            let quadrics = truncate_ideal(2, &curve.ideal)?;
            let by_quadrics = Ideal::new(curve.ideal.ring(), quadrics.basis_polys());
            let piece = secant_degree_piece(&by_quadrics, k, &ctx.budget)?;
            if piece.is_zero() {
                emit_ideal(ctx, &Ideal::zero(curve.ideal.ring()), out)?;
                println!("note: no forms in degree {}; the secant variety fills the ambient space", k + 2);
                return Ok(());
            }
            let dim = expect_dim.unwrap_or_else(|| expected_secant_dim(&curve, k));
            let deg = expect_degree.or_else(|| expected_secant_degree(&curve, k));
            let report = certify_generation(&piece, dim, deg, ctx.seed, &ctx.budget)?;
            let ideal = Ideal::new(curve.ideal.ring(), piece.basis_polys());
            emit_ideal(ctx, &ideal, out)?;
            if ctx.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!(
                    "forms: {} of degree {}; dim {} degree {} codim {} pd {:?} acm {}",
                    piece.dim(),
                    piece.degree(),
                    report.dim,
                    report.degree,
                    report.codim,
                    report.pd,
                    report.acm
                );
                println!("certified: {}", if report.certified { "CERTIFIED" } else { "NOT CERTIFIED" });
            }
            if !report.certified {
                return Err(anyhow!(
                    "prolongation output not certified as generating; try --via elimination"
                ));
            }
            Ok(())
        }
        other => Err(anyhow!("unknown --via `{other}` (use elimination or prolongation)")),
    }
}

fn emit_ideal(ctx: &Ctx, ideal: &Ideal, out: Option<&std::path::Path>) -> anyhow::Result<()> {
    let text = if ctx.json {
        serde_json::to_string_pretty(&ideal_json(ideal))? + "\n"
    } else {
        ideal_to_string(ideal)
    };
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, &text)?;
    }
    Ok(())
}

fn ideal_json(ideal: &Ideal) -> serde_json::Value {
    serde_json::json!({
        "prime": ideal.ring().field().prime(),
        "variables": ideal.ring().var_names(),
        "generators": ideal.generators().iter().map(|g| {
            serde_json::json!({
                "text": poly_to_string(g),
                "terms": g.terms().iter().map(|(m, c)| {
                    serde_json::json!({"exponents": m.exponents(), "coefficient": c.0})
                }).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
    })
}

fn cmd_betti(
    ctx: &Ctx,
    recipe: Option<&str>,
    args: &[String],
    input: Option<&std::path::Path>,
    secant_k: Option<u32>,
) -> anyhow::Result<()> {
    let curve = load_curve(ctx, recipe, args, input)?;
    let ideal = match secant_k {
        None => curve.ideal.clone(),
        Some(k) => {
            let quadrics = truncate_ideal(2, &curve.ideal)?;
            let by_quadrics = Ideal::new(curve.ideal.ring(), quadrics.basis_polys());
            let piece = secant_degree_piece(&by_quadrics, k, &ctx.budget)?;
            Ideal::new(curve.ideal.ring(), piece.basis_polys())
        }
    };
    let opts = BettiOptions { row_bound: ctx.rows, col_bound: ctx.cols, ..Default::default() };
    let (table, _hd) = betti_table(&ideal, &opts, &ctx.budget)?;
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&table)?);
    } else {
        print!("{}", table.paper_text());
    }
    if !table.complete {
        return Err(CoreError::IncompleteTable.into());
    }
    let rep = regularity_report(&table, &ideal, false, &ctx.budget)?;
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&rep)?);
    } else {
        println!(
            "reg(S/I) = {}; reg(I) = {}; pd = {}; codim = {}; acm = {}",
            rep.reg_module,
            rep.reg_ideal.map_or("-".into(), |r| r.to_string()),
            rep.projective_dimension,
            rep.codim,
            rep.acm
        );
    }
    Ok(())
}

fn parse_point(field: &PrimeField, s: &str) -> anyhow::Result<Vec<Fp>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map(|v| field.from_i64(v))
                .map_err(|e| anyhow!("bad coordinate `{t}`: {e}"))
        })
        .collect()
}

fn cmd_blowup_fiber(
    ctx: &Ctx,
    recipe: &str,
    point: &str,
    chart: Option<&str>,
    with_secant: bool,
    check_projection: bool,
) -> anyhow::Result<()> {
    let r = parse_recipe(recipe, &[], ctx.seed)?;
    let curve = curve_ideal(&r, ctx.field, &ctx.budget)?;
    let b = blowup_ideal(&curve.ideal, curve.ideal.generators(), &ctx.budget)?;
    let p = parse_point(&ctx.field, point)?;
    let chart_idx = match chart {
        None => None,
        Some(name) => Some(
            b.ring
                .var_index(name)
                .ok_or_else(|| anyhow!("no variable `{name}` in the blowup ring"))?,
        ),
    };
    let fiber = if with_secant || check_projection {
        let secant = secant_ideal_elimination(&curve.ideal, 1, &ctx.budget)?;
        if check_projection {
            let chart_idx = chart_idx.ok_or_else(|| anyhow!("--check-projection needs --chart"))?;
            let check = secant_fiber_projection_check(&curve, &b, &secant, &p, chart_idx, &ctx.budget)?;
            println!("fiber:");
            for g in check.fiber.generators() {
                println!("  {}", poly_to_string(g));
            }
            println!("projected curve (tangent-line projection):");
            for g in check.projected.generators() {
                println!("  {}", poly_to_string(g));
            }
            println!(
                "hilbert functions match: {}; generator membership both ways: {}",
                check.hilbert_match, check.membership_ok
            );
            return Ok(());
        }
        restrict_secant_to_fiber(&b, &secant, &p, chart_idx, &ctx.budget)?
    } else {
        fiber_over_point(&b, &p, chart_idx, &ctx.budget)?
    };
    emit_ideal(ctx, &fiber, None)
}

fn cmd_conjectures(ctx: &Ctx, recipe: &str, args: &[String], k: u32) -> anyhow::Result<()> {
    let r = parse_recipe(recipe, args, ctx.seed)?;
    let curve = curve_ideal(&r, ctx.field, &ctx.budget)?;
    let genus = curve.genus.ok_or_else(|| anyhow!("recipe has no genus; not a curve"))?;
    let rep = check_secant_conjectures(
        &curve.ideal,
        genus,
        curve.expected_degree,
        k,
        curve.rnc_degree.is_some(),
        &ctx.budget,
    )?;
    if ctx.json {
        println!("{}", serde_json::to_string_pretty(&rep)?);
        return Ok(());
    }
    print!("{}", rep.table.paper_text());
    println!("reg(I) = {} (conjectured {}): {}", rep.reg_ideal, rep.conjectured_reg, verdict(rep.reg_matches));
    println!("arithmetically Cohen-Macaulay: {}", verdict(rep.acm));
    println!("generated in degree {}: {}", k + 2, verdict(rep.generated_in_degree_k2));
    println!(
        "linear strand through step p = {}: {}",
        rep.linear_strand_p,
        verdict(rep.linear_strand_ok)
    );
    println!(
        "row {} has {} nonzero entries (genus {}): {}",
        2 * k,
        rep.last_row_nonzeros,
        rep.genus,
        verdict(rep.last_row_equals_genus)
    );
    println!(
        "corner beta = {} (expected binomial {}): {}",
        rep.corner_actual,
        rep.corner_expected,
        verdict(rep.corner_matches)
    );
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn cmd_example(ctx: &Ctx, name: &str) -> anyhow::Result<()> {
    match name {
        "points2" => {
            let curve = curve_ideal(&CurveRecipe::PointPair, ctx.field, &ctx.budget)?;
            println!("ideal of the two points:");
            print!("{}", ideal_to_string(&curve.ideal));
            let s = secant_ideal_elimination(&curve.ideal, 1, &ctx.budget)?;
            println!("first secant ideal (the joining line):");
            print!("{}", ideal_to_string(&s));
            Ok(())
        }
        "points5" => {
            let curve = curve_ideal(&CurveRecipe::FivePoints, ctx.field, &ctx.budget)?;
            println!("ideal of the five points:");
            print!("{}", ideal_to_string(&curve.ideal));
            for k in [1u32, 2] {
                let s = secant_ideal_elimination(&curve.ideal, k, &ctx.budget)?;
                let hd = secantry::hilbert::hilbert_data(&s, 0, &ctx.budget)?;
                println!("secant level {k}: dim {} degree {}", hd.projective_dim(), hd.degree);
                print!("{}", ideal_to_string(&s));
            }
            Ok(())
        }
        "twisted-cubic" => {
            let curve = curve_ideal(&CurveRecipe::RationalNormal(3), ctx.field, &ctx.budget)?;
            let s = secant_ideal_elimination(&curve.ideal, 1, &ctx.budget)?;
            println!("secant ideal generators: {}", s.generators().len());
            println!("(the secant variety fills projective 3-space)");
            let b = blowup_ideal(&curve.ideal, curve.ideal.generators(), &ctx.budget)?;
            println!("blowup ideal:");
            for g in b.ideal.generators() {
                println!("  {}", poly_to_string(g));
            }
            let p = vec![ctx.field.zero(), ctx.field.zero(), ctx.field.zero(), ctx.field.one()];
            let fib = fiber_over_point(&b, &p, None, &ctx.budget)?;
            println!("fiber over [0:0:0:1]:");
            for g in fib.generators() {
                println!("  {}", poly_to_string(g));
            }
            Ok(())
        }
        "blowup-rnc4" => {
            let curve = curve_ideal(&CurveRecipe::RationalNormal(4), ctx.field, &ctx.budget)?;
            let b = blowup_ideal(&curve.ideal, curve.ideal.generators(), &ctx.budget)?;
            println!("blowup ideal ({} minimal generators):", b.ideal.generators().len());
            for g in b.ideal.generators() {
                println!("  {}", poly_to_string(g));
            }
            let f = ctx.field;
            let off = vec![f.zero(), f.one(), f.zero(), f.zero(), f.zero()];
            let fib1 = fiber_over_point(&b, &off, Some(1), &ctx.budget)?;
            println!("fiber over [0:1:0:0:0] in the chart x_1 = 1:");
            for g in fib1.generators() {
                println!("  {}", poly_to_string(g));
            }
            let on = vec![f.one(), f.zero(), f.zero(), f.zero(), f.zero()];
            let fib2 = fiber_over_point(&b, &on, Some(0), &ctx.budget)?;
            println!("fiber over [1:0:0:0:0] in the chart x_0 = 1:");
            for g in fib2.generators() {
                println!("  {}", poly_to_string(g));
            }
            let secant = secant_ideal_elimination(&curve.ideal, 1, &ctx.budget)?;
            let restricted = restrict_secant_to_fiber(&b, &secant, &on, Some(0), &ctx.budget)?;
            println!("secant transform meeting that fiber:");
            for g in restricted.generators() {
                println!("  {}", poly_to_string(g));
            }
            Ok(())
        }
        "g2d9" => cmd_betti(ctx, Some("g2d9"), &[], None, None),
        "g2d9-secant" => cmd_betti(ctx, Some("g2d9"), &[], None, Some(1)),
        other => Err(anyhow!(
            "unknown example `{other}`; try points2, points5, twisted-cubic, blowup-rnc4, g2d9, g2d9-secant"
        )),
    }
}
