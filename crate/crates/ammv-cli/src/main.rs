mod config;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use ammv::algebra::{finite_dbsf, shuffle_indices, stuffle, Relation};
use ammv::checks::{self, CheckResult, Suite, Tol};
use ammv::expr::{eval_expr, parse_expr};
use ammv::index::parse_symbol;
use ammv::lincomb::format_gaussian;
use ammv::numerics::{Evaluator, PrecReal};
use ammv::regularization::reg_dbsf;
use ammv::relations::store::residual;
use ammv::relations::{
    basis_check, duality_relation, harvest_into, pslq, rank_and_dims, threshold, BasisFamily, DimReport,
    RelationStore, Source,
};
use ammv::words::{dual_word, p_map_any, word_to_cmzv, words_to_indices};
use ammv::{Index, LinComb, Rational, Word};

use config::{Config, CONFIG_ENV};

/// Alternating multiple mixed values: evaluation, products, relations.
#[derive(Parser, Debug)]
#[command(name = "ammv", version)]
struct Cli {
    /// Working precision in decimal digits [default: from config, else 30]
    #[arg(long, global = true)]
    digits: Option<u32>,

    /// Append validated relations to this store file
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Worker threads
    #[arg(long, global = true, value_name = "J")]
    jobs: Option<usize>,

    /// TOML config file
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an index, family value, word or expression
    Eval {
        text: String,
        /// Print the word and its CMZV decomposition
        #[arg(long)]
        show_word: bool,
    },
    /// Expand a product of two indices
    Product {
        #[arg(long, value_enum, default_value = "shuffle")]
        kind: Kind,
        a: String,
        b: String,
    },
    /// Finite double-shuffle relation of two admissible indices
    Dbsf { a: String, b: String },
    /// Duality identity of an admissible index
    Dual { a: String },
    /// Regularized double-shuffle relations of a divergent index and an admissible one
    Reg { a: String, b: Option<String> },
    /// Harvest relations and print dimension bounds
    Dims {
        #[arg(long)]
        weight: u32,
        /// Allow weights above the configured cap
        #[arg(long)]
        force: bool,
        /// Relation sources [default: all]
        #[arg(long, value_delimiter = ',')]
        sources: Vec<String>,
    },
    /// Integer relation among expression values
    Pslq {
        #[arg(required = true, num_args = 2..)]
        values: Vec<String>,
        /// Coefficient bound 2^B
        #[arg(long, default_value_t = 20)]
        bound_bits: u32,
    },
    /// Independence check of a listed low-weight basis
    Basis {
        #[arg(long)]
        family: String,
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 10)]
        bound_bits: u32,
    },
    /// Run the identity catalogue
    VerifyPaper {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Shuffle,
    Stuffle,
}

/// Exit status with a reason.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(Exit(c, _)) = e.downcast_ref::<Exit>() {
        return *c;
    }
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<ammv::Error>() {
            return match err {
                ammv::Error::Budget(_) => 3,
                ammv::Error::Io(_) => 1,
                _ => 2,
            };
        }
        if cause.downcast_ref::<toml::de::Error>().is_some() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

struct Ctx {
    ev: Evaluator,
    digits: u32,
    config: Config,
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let config = Config::resolve(cli.config.as_deref()).map_err(|e| anyhow::Error::new(Exit(2, format!("{e:#}"))))?;
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global().context("starting thread pool")?;
    }
    let digits = cli.digits.unwrap_or(config.digits);
    if digits == 0 {
        bail!(Exit(2, "--digits must be positive".into()));
    }
    let ev = Evaluator::new(config.eval_config());
    if let Some(p) = config.cache.as_deref().filter(|p| p.exists()) {
        let n = ev.load_cache(p)?;
        log::info!("loaded {n} cached values from {}", p.display());
    }
    let out = cli.out.clone();
    let ctx = Ctx { ev, digits, config, out };
    let res = dispatch(&ctx, cli.command);
    if let Some(p) = ctx.config.cache.as_deref() {
        if let Err(e) = ctx.ev.save_cache(p) {
            log::warn!("could not write cache {}: {e}", p.display());
        }
    }
    res
}

fn dispatch(ctx: &Ctx, cmd: Command) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut o = stdout.lock();
    match cmd {
        Command::Eval { text, show_word } => cmd_eval(ctx, &mut o, &text, show_word),
        Command::Product { kind, a, b } => cmd_product(&mut o, kind, &a, &b),
        Command::Dbsf { a, b } => {
            let r = finite_dbsf(&index(&a)?, &index(&b)?)?;
            emit_relations(ctx, &mut o, vec![r])
        }
        Command::Dual { a } => cmd_dual(ctx, &mut o, &a),
        Command::Reg { a, b } => {
            let j = match b {
                Some(b) => index(&b)?,
                None => Index::empty(),
            };
            let rels = reg_dbsf(&index(&a)?, &j)?;
            emit_relations(ctx, &mut o, rels)
        }
        Command::Dims { weight, force, sources } => cmd_dims(ctx, &mut o, weight, force, &sources),
        Command::Pslq { values, bound_bits } => cmd_pslq(ctx, &mut o, &values, bound_bits),
        Command::Basis { family, weight, bound_bits } => cmd_basis(ctx, &mut o, &family, weight, bound_bits),
        Command::VerifyPaper { suite } => cmd_verify(ctx, &mut o, &suite),
    }
}

fn index(text: &str) -> anyhow::Result<Index> {
    let (c, i) = parse_symbol(text).with_context(|| format!("in `{text}`"))?;
    if c != Rational::from_integer(1.into()) {
        log::info!("{text} = {c} * {i}");
    }
    Ok(i)
}

fn print_value(o: &mut impl Write, label: &str, v: &PrecReal) -> io::Result<()> {
    writeln!(o, "{label}\t{}\t{:.1e}\t{}", v.value.to_fixed(v.digits as usize), v.err, v.digits)
}

fn cmd_eval(ctx: &Ctx, o: &mut impl Write, text: &str, show_word: bool) -> anyhow::Result<()> {
    let parsed = parse_expr(text);
    let value = match &parsed {
        Ok(e) => eval_expr(&ctx.ev, e, ctx.digits)?,
        Err(e) => match text.parse::<Word>() {
            Ok(w) => ctx.ev.eval_word(&w, ctx.digits)?,
            Err(_) => return Err(anyhow::Error::new(e.clone()).context(format!("cannot parse `{text}`"))),
        },
    };
    writeln!(o, "input\tvalue\terr\tdigits")?;
    print_value(o, text, &value)?;
    if show_word {
        let (c, w) = match text.parse::<Word>() {
            Ok(w) if parsed.is_err() => (Rational::from_integer(1.into()), w),
            _ => {
                let (c, i) = parse_symbol(text).context("--show-word needs a single index or family value")?;
                let (s, w) = p_map_any(&i);
                (c * Rational::from_integer(s.into()), w)
            }
        };
        writeln!(o, "word\t{c}\t{w}")?;
        for (k, coeff) in word_to_cmzv(&w)?.iter() {
            writeln!(o, "cmzv\t{}\t{k}", format_gaussian(coeff))?;
        }
    }
    Ok(())
}

fn print_lincomb(o: &mut impl Write, c: &LinComb<Index>) -> io::Result<()> {
    writeln!(o, "coeff\tindex")?;
    for (i, k) in c.iter() {
        writeln!(o, "{k}\t{i}")?;
    }
    Ok(())
}

fn cmd_product(o: &mut impl Write, kind: Kind, a: &str, b: &str) -> anyhow::Result<()> {
    let (ca, i) = parse_symbol(a).with_context(|| format!("in `{a}`"))?;
    let (cb, j) = parse_symbol(b).with_context(|| format!("in `{b}`"))?;
    let c = match kind {
        Kind::Shuffle => shuffle_indices(&i, &j)?,
        Kind::Stuffle => stuffle(&i, &j),
    };
    print_lincomb(o, &c.scale(&(ca * cb)))?;
    Ok(())
}

fn cmd_dual(ctx: &Ctx, o: &mut impl Write, a: &str) -> anyhow::Result<()> {
    let i = index(a)?;
    if !i.is_admissible() {
        return Err(ammv::Error::Inadmissible(i.to_string()).into());
    }
    let (s, w) = p_map_any(&i);
    let rhs = words_to_indices(&dual_word(&w)?)?.scale(&Rational::from_integer(s.into()));
    writeln!(o, "# {i} = {rhs}")?;
    print_lincomb(o, &rhs)?;
    let r = duality_relation(&w)?;
    if r.is_trivial() {
        return Ok(());
    }
    emit_relations(ctx, o, vec![r])
}

/// Validates relations numerically, prints them, and appends them to `--out`.
fn emit_relations(ctx: &Ctx, o: &mut impl Write, rels: Vec<Relation>) -> anyhow::Result<()> {
    let tol = threshold(ctx.digits);
    writeln!(o, "weight\tprovenance\tresidual\tstatus\trelation")?;
    let mut good = Vec::new();
    let mut bad = 0;
    for mut r in rels {
        let x = residual(&ctx.ev, &r, ctx.digits)?;
        let ok = x < tol;
        writeln!(o, "{}\t{}\t{x:.3e}\t{}\t{r}", r.weight, r.provenance, if ok { "PASS" } else { "FAIL" })?;
        if ok {
            r.residual = Some(format!("{x:.3e}"));
            r.digits = ctx.digits;
            good.push(r);
        } else {
            bad += 1;
        }
    }
    if let Some(p) = ctx.out.as_deref() {
        RelationStore::append_to(p, &good)?;
    }
    if bad > 0 {
        bail!(Exit(1, format!("{bad} relation(s) above {tol:.0e}")));
    }
    Ok(())
}

fn cmd_dims(ctx: &Ctx, o: &mut impl Write, weight: u32, force: bool, sources: &[String]) -> anyhow::Result<()> {
    if weight > ctx.config.max_weight && !force {
        bail!(Exit(
            3,
            format!("weight {weight} exceeds the cap {} (raise max_weight or pass --force)", ctx.config.max_weight)
        ));
    }
    let sources: Vec<Source> = if sources.is_empty() {
        Source::ALL.to_vec()
    } else {
        sources.iter().map(|s| s.parse()).collect::<ammv::Result<_>>()?
    };
    let store_path = ctx.config.store.as_deref();
    let mut store = match store_path.filter(|p| p.exists()) {
        Some(p) => RelationStore::load(p)?,
        None => RelationStore::new(),
    };
    let harvests = harvest_into(&ctx.ev, &mut store, weight, &sources, ctx.digits)?;
    writeln!(o, "# digits\t{}", ctx.digits)?;
    for h in &harvests {
        writeln!(
            o,
            "# w{}\taccepted {}\trejected {}\tskipped {}",
            h.weight,
            h.accepted.len(),
            h.rejected.len(),
            h.skipped.len()
        )?;
    }
    writeln!(o, "{}", DimReport::HEADER)?;
    for w in 1..=weight {
        for row in rank_and_dims(w, &store).rows() {
            writeln!(o, "{row}")?;
        }
    }
    if let Some(p) = store_path {
        store.save(p)?;
    }
    if let Some(p) = ctx.out.as_deref() {
        let all: Vec<Relation> = harvests.iter().flat_map(|h| h.accepted.iter().cloned()).collect();
        RelationStore::append_to(p, &all)?;
    }
    if harvests.iter().any(|h| !h.rejected.is_empty()) {
        bail!(Exit(1, "some harvested relations failed validation".into()));
    }
    Ok(())
}

fn cmd_pslq(ctx: &Ctx, o: &mut impl Write, texts: &[String], bound_bits: u32) -> anyhow::Result<()> {
    let mut values = Vec::with_capacity(texts.len());
    for t in texts {
        let e = parse_expr(t).with_context(|| format!("in `{t}`"))?;
        values.push(eval_expr(&ctx.ev, &e, ctx.digits + 3)?);
    }
    writeln!(o, "value\tcoeff")?;
    match pslq(&values, ctx.digits, bound_bits)? {
        Some(c) => {
            for (t, k) in texts.iter().zip(&c) {
                writeln!(o, "{t}\t{k}")?;
            }
        }
        None => writeln!(o, "# no relation with coefficients below 2^{bound_bits}")?,
    }
    Ok(())
}

fn cmd_basis(ctx: &Ctx, o: &mut impl Write, family: &str, weight: u32, bound_bits: u32) -> anyhow::Result<()> {
    let f: BasisFamily = family.parse()?;
    let rep = basis_check(&ctx.ev, f, weight, ctx.digits, bound_bits)?;
    writeln!(o, "# {} weight {} digits {} bound 2^{}", rep.family, rep.weight, rep.digits, rep.bound_bits)?;
    writeln!(o, "kind\titem\tvalue")?;
    for (n, v) in &rep.members {
        writeln!(o, "member\t{n}\t{}", v.value.to_fixed(ctx.digits as usize))?;
    }
    match &rep.joint {
        Some(c) => writeln!(o, "joint\tall\t{}", join(c))?,
        None => writeln!(o, "joint\tall\tnone")?,
    }
    for (a, b, c) in &rep.pairwise {
        writeln!(o, "pair\t{},{}\t{}", rep.members[*a].0, rep.members[*b].0, join(c))?;
    }
    let tol = threshold(ctx.digits);
    for r in &rep.reductions {
        writeln!(o, "reduction\t{} = {}\t{:.3e}", r.lhs, r.rhs, r.residual)?;
    }
    if !rep.independent() {
        bail!(Exit(1, format!("{} weight {weight} is not independent", rep.family)));
    }
    if !rep.reductions_hold(tol) {
        bail!(Exit(1, format!("a listed reduction fails at {tol:.0e}")));
    }
    Ok(())
}

fn join<T: std::fmt::Display>(c: &[T]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_verify(ctx: &Ctx, o: &mut impl Write, suite: &str) -> anyhow::Result<()> {
    let list = if suite == "all" {
        checks::catalogue()
    } else {
        checks::suite(suite.parse::<Suite>()?)
    };
    let results = checks::run_checks(&ctx.ev, &list, ctx.digits);
    writeln!(o, "# suite\t{suite}")?;
    writeln!(o, "# digits\t{}", ctx.digits)?;
    for c in list.iter().filter(|c| c.tol != Tol::Half) {
        writeln!(o, "# tol override\t{}\t{:.0e}", c.id, c.tol.at(ctx.digits))?;
    }
    writeln!(o, "{}", CheckResult::HEADER)?;
    for r in &results {
        writeln!(o, "{}", r.tsv())?;
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    writeln!(o, "# {} of {} passed", results.len() - failed, results.len())?;
    o.flush()?;
    if results.iter().any(|r| r.budget) {
        bail!(Exit(3, "evaluation budget exhausted".into()));
    }
    if failed > 0 {
        bail!(Exit(1, format!("{failed} check(s) failed")));
    }
    Ok(())
}
