use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dfn_core::bench::{
    emit_csv, fit_samples, parse_m_list, render_svg, run_bench, BenchConfig, Operation,
};
use dfn_core::connectives::{by_name, lift_binary, lift_unary};
use dfn_core::oracle::{cross_check, DEFAULT_CAP};
use dfn_core::{
    interval_count, is_admissible, pos, pos_inv, pos_inv_trace, pos_trace, sorted_intervals,
    total_dfns, ChainParams, Dfn, Error, IntervalOrder, Result,
};
use num_bigint::BigUint;

#[derive(Parser)]
#[command(
    name = "dfnrank",
    version,
    about = "Exact ranking and unranking of discrete fuzzy numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Chain {
    /// Last point of the chain 0..=n.
    #[arg(long)]
    n: usize,
    /// Number of membership levels (at least 2).
    #[arg(long)]
    m: usize,
    /// Membership value of each level, comma separated, from 0 to 1.
    #[arg(long)]
    values: Option<String>,
}

impl Chain {
    fn params(&self) -> Result<ChainParams> {
        let p = ChainParams::new(self.n, self.m)?;
        match &self.values {
            None => Ok(p),
            Some(text) => {
                let values = text
                    .split(',')
                    .map(|v| {
                        v.trim()
                            .parse::<f64>()
                            .map_err(|_| Error::Parse(format!("bad level value {v:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                p.with_values(values)
            }
        }
    }
}

#[derive(Args)]
struct OrderArg {
    /// Interval order: t-inc, lex1, lex2 or xu-yager.
    #[arg(long, default_value = "t-inc")]
    order: String,
}

impl OrderArg {
    fn get(&self) -> Result<IntervalOrder> {
        self.order.parse()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Number of dfns on the chain.
    Count {
        #[command(flatten)]
        chain: Chain,
    },
    /// List the subintervals of 0..=n in ascending order.
    Intervals {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Position of a dfn. Reads it from stdin when --dfn is absent.
    Rank {
        #[command(flatten)]
        chain: Chain,
        #[command(flatten)]
        order: OrderArg,
        /// Levels per point, e.g. 6,6,6,2,1,1, or a JSON record.
        #[arg(long)]
        dfn: Option<String>,
    },
    /// The dfn at a position.
    Unrank {
        #[command(flatten)]
        chain: Chain,
        #[command(flatten)]
        order: OrderArg,
        #[arg(long)]
        index: String,
        /// Print a JSON record instead of the level list.
        #[arg(long, conflicts_with = "membership")]
        json: bool,
        /// Print membership degrees instead of levels.
        #[arg(long)]
        membership: bool,
    },
    /// Per-level table of candidates and counts for one rank or unrank.
    Trace {
        #[command(flatten)]
        chain: Chain,
        #[command(flatten)]
        order: OrderArg,
        #[arg(long, conflicts_with = "dfn", required_unless_present = "dfn")]
        index: Option<String>,
        #[arg(long)]
        dfn: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Whether the order refines the componentwise order on intervals.
    Admissible {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Cross-check rank and unrank against brute-force enumeration.
    Verify {
        #[command(flatten)]
        chain: Chain,
        #[command(flatten)]
        order: OrderArg,
        /// Largest instance to enumerate.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    /// Apply an index function to dfns through their positions.
    Lift {
        #[command(flatten)]
        chain: Chain,
        #[command(flatten)]
        order: OrderArg,
        /// lukasiewicz, goedel, rescher, min, max, mean, negation, first or second.
        #[arg(long = "impl")]
        function: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
    },
    /// Time unrank and rank on random indices for a range of m.
    Bench {
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// A:B:STEP or a comma-separated list.
        #[arg(long, default_value = "100:1000:100")]
        m_list: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[command(flatten)]
        order: OrderArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn parse_index(text: &str) -> Result<BigUint> {
    let t = text.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!(
            "index must be a non-negative integer: {t:?}"
        )));
    }
    t.parse()
        .map_err(|_| Error::Parse(format!("bad index {t:?}")))
}

/// Accepts `6,6,6,2,1,1` or a JSON record, which must match the chain.
fn parse_dfn(params: &ChainParams, text: &str) -> Result<Dfn> {
    let t = text.trim();
    if t.starts_with('{') {
        let d = Dfn::from_json(t)?;
        if !d.params().same_shape(params) {
            return Err(Error::ChainMismatch {
                left_n: params.n(),
                left_m: params.m(),
                right_n: d.params().n(),
                right_m: d.params().m(),
            });
        }
        Ok(d)
    } else {
        Dfn::parse(params.clone(), t)
    }
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s)?;
    Ok(s)
}

/// Writes to stdout; a closed pipe ends output silently.
fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Count { chain } => {
            let p = chain.params()?;
            emit(&format!("{}\n", total_dfns(p.n(), p.m())))?;
        }
        Command::Intervals { n, order } => {
            let ord = order.get()?;
            eprintln!("{} intervals", interval_count(n));
            let listing: String = sorted_intervals(&ord, n)?
                .iter()
                .map(|i| format!("{i}\n"))
                .collect();
            emit(&listing)?;
        }
        Command::Rank { chain, order, dfn } => {
            let p = chain.params()?;
            let text = match dfn {
                Some(t) => t,
                None => read_stdin()?,
            };
            emit(&format!(
                "{}\n",
                pos(&order.get()?, &parse_dfn(&p, &text)?)?
            ))?;
        }
        Command::Unrank {
            chain,
            order,
            index,
            json,
            membership,
        } => {
            let p = chain.params()?;
            let d = pos_inv(&order.get()?, &p, &parse_index(&index)?)?;
            if json {
                emit(&format!("{}\n", d.to_json()))?;
            } else if membership {
                emit(&format!("{}\n", d.membership_string()))?;
            } else {
                emit(&format!("{d}\n"))?;
            }
        }
        Command::Trace {
            chain,
            order,
            index,
            dfn,
            json,
        } => {
            let p = chain.params()?;
            let ord = order.get()?;
            let trace = match (index, dfn) {
                (Some(i), _) => pos_inv_trace(&ord, &p, &parse_index(&i)?)?,
                (None, Some(d)) => pos_trace(&ord, &parse_dfn(&p, &d)?)?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            if json {
                emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&trace).expect("trace serializes")
                ))?;
            } else {
                emit(&trace.to_string())?;
            }
        }
        Command::Admissible { n, order } => {
            let ord = order.get()?;
            let a = is_admissible(&ord, n);
            let line = match a.witness {
                None => format!("{ord} is admissible on n={n}\n"),
                Some((i, j)) => format!(
                    "{ord} is not admissible on n={n}: {i} <=2 {j} but {i} comes after {j}\n"
                ),
            };
            emit(&line)?;
        }
        Command::Verify { chain, order, cap } => {
            let report = cross_check(&order.get()?, &chain.params()?, cap)?;
            emit(&format!("{}\n", report.to_json()))?;
            eprintln!("{report}");
            if !report.passed() {
                std::process::exit(1);
            }
        }
        Command::Lift {
            chain,
            order,
            function,
            a,
            b,
        } => {
            let p = chain.params()?;
            let ord = order.get()?;
            let f = by_name(&function)
                .ok_or_else(|| Error::InvalidParams(format!("unknown function {function:?}")))?;
            let a = parse_dfn(&p, &a)?;
            let out = match (f.arity(), b) {
                (1, None) => lift_unary(&ord, &p, &f, &a)?,
                (2, Some(b)) => lift_binary(&ord, &p, &f, &a, &parse_dfn(&p, &b)?)?,
                (expected, b) => {
                    return Err(Error::ArityMismatch {
                        name: f.name().to_string(),
                        expected,
                        found: 1 + b.is_some() as usize,
                    })
                }
            };
            emit(&format!("{out}\n"))?;
        }
        Command::Bench {
            n,
            m_list,
            trials,
            order,
            seed,
            csv,
            svg,
        } => {
            let cfg = BenchConfig {
                n,
                m_list: parse_m_list(&m_list)?,
                trials,
                order: order.get()?,
                seed,
            };
            cfg.validate()?;
            let samples = run_bench(&cfg)?;
            match csv {
                Some(path) => emit_csv(&samples, fs::File::create(path)?)?,
                None => emit_csv(&samples, io::stdout().lock())?,
            }
            if let Some(path) = svg {
                fs::write(path, render_svg(&samples)?)?;
            }
            for op in [Operation::Unrank, Operation::Rank] {
                match fit_samples(&samples, op) {
                    Ok(fit) => eprintln!("{} log-log slope {:.3}", op.as_str(), fit.slope),
                    Err(e) => eprintln!("{}: no fit ({e})", op.as_str()),
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
