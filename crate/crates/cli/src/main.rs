use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use exppairs::applications::{
    delta_two, mu_reference, mu_sigma, run_parallel, thm4_alpha, thm5_alpha, thm6_theta, xi, xi_reference,
    Expected, ReportRow, THM5_MIN_R,
};
use exppairs::config::{parse_config, parse_root_region};
use exppairs::hull::optimize_hull;
use exppairs::optimizer::{optimize, Mode, SearchConfig, SearchResult};
use exppairs::pairs::{lookup, Word};
use exppairs::plot::{generation_points, plot_generations};
use exppairs::rational::{fmt_decimal, fmt_rational, parse_rational, to_f64, Rational};
use exppairs::{Error, ExponentPair};

#[derive(Parser)]
#[command(name = "exppairs", version, about = "Exact optimisation over exponent pairs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone)]
struct SearchOpts {
    /// Search tolerance as a rational, e.g. 1/1000000000
    #[arg(long, value_parser = rational)]
    tol: Option<Rational>,
    /// Maximum recursion depth
    #[arg(long)]
    depth: Option<usize>,
    /// Print per-depth call counts
    #[arg(long)]
    stats: bool,
}

impl SearchOpts {
    fn apply(&self, mut cfg: SearchConfig) -> SearchConfig {
        if let Some(t) = &self.tol {
            cfg.tolerance = t.clone();
        }
        if let Some(d) = self.depth {
            cfg.max_depth = d;
        }
        cfg
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rigorous,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThmName {
    Thm4,
    Thm5,
    Thm6,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    Xi,
    Mu,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimise the objective of a JSON config file
    Optimize {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Minimise over the convex hull approximation instead of the pairs
        #[arg(long)]
        hull: bool,
        /// Root region: triangle, lemma1 or lemma1:N
        #[arg(long)]
        root: Option<String>,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Exponent of the (a,b) divisor problem, max of the two bounds
    Xi {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Bound for the growth exponent of zeta on Re s = sigma
    Mu {
        #[arg(long, value_parser = rational)]
        sigma: Rational,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Both cases of the asymmetric two-dimensional divisor problem
    Delta {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[command(flatten)]
        search: SearchOpts,
    },
    /// Closed forms of the theorems on divisor problems
    Thm {
        #[arg(long, value_enum)]
        name: ThmName,
        #[arg(long)]
        r: u32,
    },
    /// List (and optionally plot) the generations of a pair
    Generations {
        /// Catalog label, a word such as `A BA I`, or `k,l`
        #[arg(long)]
        initial: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Evaluate a word
    Eval {
        word: String,
        #[arg(long, value_parser = rational)]
        tol: Option<Rational>,
    },
    /// Reproduce a reference table
    Table {
        #[arg(value_enum)]
        name: TableName,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        search: SearchOpts,
    },
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational: `{s}`"))
}

enum Failure {
    Usage(String),
    Infeasible,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible => Failure::Infeasible,
            Error::Config { .. }
            | Error::WordParse { .. }
            | Error::UnknownLabel(_)
            | Error::OutOfRange(_)
            | Error::InvalidObjective(_)
            | Error::DepthCap { .. } => Failure::Usage(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

fn print_row(row: &ReportRow, stats: bool) {
    println!("{row}");
    if let Some(lo) = &row.lower_bound {
        if !row.attained {
            println!("  lower bound {}", fmt_decimal(lo, 12));
        }
    }
    if stats {
        println!("  calls {}", row.stats);
    }
    println!("{}", row.machine_line());
}

fn print_result(res: &SearchResult, cfg: &SearchConfig, stats: bool) -> Result<(), Failure> {
    let Some(best) = &res.best else {
        return Err(Failure::Infeasible);
    };
    let attained = res.attained();
    let value = if attained { fmt_rational(&best.value) } else { fmt_decimal(&best.value, 12) };
    let word = best.word.as_ref().map_or_else(|| "-".to_string(), |w| w.to_string());
    println!("value {value} ({}) at {} via {word}", fmt_decimal(&best.value, 12), best.pair);
    if let Some(lo) = &res.lower_bound {
        println!("lower bound {}", fmt_decimal(lo, 12));
    }
    if res.depth_limited {
        println!("warning: depth limit {} reached; the lower bound is not certified", cfg.max_depth);
    }
    if res.mode == Mode::Greedy {
        println!("greedy run: the value is an upper bound only");
    }
    if stats {
        println!("calls {} (total {})", res.stats, res.stats.total());
    }
    println!(
        "value={value} word={} attained={attained} calls={}",
        word.replace(' ', "·"),
        res.stats
    );
    Ok(())
}

fn parse_initial(s: &str) -> Result<ExponentPair, Failure> {
    if let Some((k, l)) = s.split_once(',') {
        let (k, l) = (rational(k.trim()).map_err(Failure::Usage)?, rational(l.trim()).map_err(Failure::Usage)?);
        let p = ExponentPair::new(k, l);
        if !p.in_triangle() {
            return Err(Failure::Usage(format!("{p} is outside the triangle")));
        }
        return Ok(p);
    }
    if let Ok(p) = lookup(s) {
        return Ok(p);
    }
    let w: Word = s.parse()?;
    Ok(w.eval()?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Optimize { config, mode, hull, root, search } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Failure::Usage(format!("{}: {e}", config.display())))?;
            let (obj, lc, cfg) = parse_config(&text)?;
            let mut cfg = search.apply(cfg);
            if let Some(m) = mode {
                cfg.mode = match m {
                    ModeArg::Rigorous => Mode::Rigorous,
                    ModeArg::Greedy => Mode::Greedy,
                };
            }
            if let Some(r) = root {
                cfg.root_region = parse_root_region(&r)?;
            }
            cfg.validate()?;
            if hull {
                let h = optimize_hull(&obj, &lc, &cfg)?;
                println!("hull polygon: {} vertices, {} support lines", h.polygon.vertices().len(), h.support_lines);
                print_result(&h.result, &cfg, search.stats)
            } else {
                let res = optimize(&obj, &lc, &cfg)?;
                print_result(&res, &cfg, search.stats)
            }
        }
        Cmd::Xi { a, b, search } => {
            let row = xi(a, b, &search.apply(SearchConfig::default()))?;
            print_row(&row, search.stats);
            Ok(())
        }
        Cmd::Mu { sigma, search } => {
            let row = mu_sigma(&sigma, &search.apply(SearchConfig::default()))?;
            print_row(&row, search.stats);
            Ok(())
        }
        Cmd::Delta { a, b, search } => {
            let d = delta_two(a, b, &search.apply(SearchConfig::default()))?;
            for (case, row) in &d.cases {
                match row {
                    Some(r) => println!("  {case:?}: {}", r.value_text()),
                    None => println!("  {case:?}: infeasible"),
                }
            }
            print_row(&d.row, search.stats);
            Ok(())
        }
        Cmd::Thm { name, r } => {
            match name {
                ThmName::Thm4 => {
                    let t = thm4_alpha(r)?;
                    println!("alpha = {} ({})", fmt_rational(&t.alpha), fmt_decimal(&t.alpha, 12));
                    println!("witness {} = {}", t.word, t.pair);
                    println!("closed form equals witness: {}", t.closed_form_matches);
                    println!("2l - 2^(r+1) k - 1 < 0: {}", t.second_case);
                    println!("alpha < 1/(2^r + r): {}", t.below_bound);
                    println!("value={} word={} attained=true calls=", fmt_rational(&t.alpha), t.word.to_string().replace(' ', "·"));
                }
                ThmName::Thm5 => {
                    if r < THM5_MIN_R {
                        eprintln!(
                            "note: the closed form is stated for r >= 1, but its witness A^(r-3) BA A HW needs r >= 3 and b = 2^r > a = 3"
                        );
                    }
                    let t = thm5_alpha(r)?;
                    println!("alpha = {} ({})", fmt_rational(&t.alpha), fmt_decimal(&t.alpha, 12));
                    println!("witness {} = {}", t.word, t.pair);
                    println!("witness gives {} (second case: {})", fmt_rational(&t.witness_alpha), t.second_case);
                    println!("value={} word={} attained=true calls=", fmt_rational(&t.alpha), t.word.to_string().replace(' ', "·"));
                }
                ThmName::Thm6 => {
                    let t = thm6_theta(r)?;
                    println!("theta = {} ({})", fmt_rational(&t.theta), fmt_decimal(&t.theta, 15));
                    println!("theta < 1/(2^r + 1): {}", t.below_bound);
                    println!("witness, B A^2 grouping: {} = {}", t.word_b_a2, t.pair_b_a2);
                    println!("witness, (BA)^2 grouping: {} = {}", t.word_ba2, t.pair_ba2);
                    println!("groupings give the same pair: {}", t.parses_agree());
                    println!("value={} word=- attained=true calls=", fmt_rational(&t.theta));
                }
            }
            Ok(())
        }
        Cmd::Generations { initial, depth, plot } => {
            let p = parse_initial(&initial)?;
            match plot {
                Some(path) => {
                    let n = plot_generations(&p, depth, &path)?;
                    println!("wrote {n} points to {}", path.display());
                }
                None => {
                    for (n, q) in generation_points(&p, depth)? {
                        println!("{n} {q}");
                    }
                }
            }
            Ok(())
        }
        Cmd::Eval { word, tol } => {
            let w: Word = word.parse()?;
            if w.is_finite() {
                let p = w.eval()?;
                println!("{w} = {p}");
            } else {
                let tol = tol.unwrap_or_else(|| SearchConfig::default().tolerance);
                let a = w.eval_approx(&tol)?;
                let (k, l) = a.pair.to_f64();
                println!("{w} ≈ ({k:.15}, {l:.15}) within {}", fmt_decimal(&a.error_bound, 15));
            }
            Ok(())
        }
        Cmd::Table { name, jobs, search } => {
            let cfg = search.apply(SearchConfig::default());
            match name {
                TableName::Xi => {
                    let rows = xi_reference();
                    let out = run_parallel(&rows, jobs, |row| xi(row.a, row.b, &cfg));
                    println!("{:<8} {:>24} {:>24}  word", "(a,b)", "value", "reference");
                    for (row, res) in rows.iter().zip(out) {
                        let r = res?;
                        let reference = match &row.expected {
                            Expected::Exact(v) => fmt_rational(v),
                            Expected::Surd(_, form) => form.to_string(),
                        };
                        let word = r.word.as_ref().map_or_else(|| "-".into(), |w| w.to_string());
                        println!("{:<8} {:>24} {:>24}  {word}", format!("({},{})", row.a, row.b), r.value_text(), reference);
                        println!("{}", r.machine_line());
                    }
                }
                TableName::Mu => {
                    let rows = mu_reference();
                    let out = run_parallel(&rows, jobs, |row| mu_sigma(&row.sigma, &cfg));
                    println!("{:<6} {:>20} {:>14} {:>6}", "sigma", "value", "reference", "calls");
                    for (row, res) in rows.iter().zip(out) {
                        let r = res?;
                        let reference = match &row.expected {
                            Expected::Exact(v) => fmt_rational(v),
                            Expected::Surd(x, _) => format!("{x:.7}"),
                        };
                        println!(
                            "{:<6} {:>20} {:>14} {:>6}",
                            fmt_rational(&row.sigma),
                            r.value_text(),
                            reference,
                            r.stats.total()
                        );
                        if search.stats {
                            println!("  {:.12}", to_f64(&r.value));
                        }
                        println!("{}", r.machine_line());
                    }
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Infeasible) => {
            println!("infeasible: no exponent pair satisfies the constraints");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
