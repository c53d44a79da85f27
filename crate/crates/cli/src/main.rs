use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use isotypic::abgroup::{FinAbGroup, GroupElement, Subgroup};
use isotypic::chars::rational_irreps;
use isotypic::fixture::{make_fixture, random_conjugated_spec, FixtureSpec};
use isotypic::io::{self, ActionFile};
use isotypic::roan::{roan_decomposition, verify_theorem31};
use isotypic::{Error, GAction};

/// Isotypical and Roan decompositions of finite abelian group actions, up to isogeny.
#[derive(Parser, Debug)]
#[command(name = "isotypic", version)]
struct Cli {
    /// Machine-readable JSON output instead of aligned text.
    #[arg(long, global = true)]
    json: bool,

    /// Refuse groups larger than this.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_order: u64,

    /// Add abelian-variety plausibility warnings to decompositions.
    #[arg(long, global = true)]
    check_plausibility: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Isotypical decomposition of an action file.
    Decompose { file: PathBuf },
    /// Roan's decomposition of a cyclic action.
    Roan { file: PathBuf },
    /// Match Roan's decomposition against the isotypical one.
    Verify { file: PathBuf },
    /// Irreducible rational representations of a group.
    Characters {
        #[arg(long, value_parser = parse_moduli, value_delimiter = ',', required = true)]
        group: Vec<u64>,
    },
    /// Group invariants and, with --kernels, the kernel subgroups.
    Subgroups {
        #[arg(long, value_parser = parse_moduli, value_delimiter = ',', required = true)]
        group: Vec<u64>,
        /// List kernels of characters with their quotients and P_K.
        #[arg(long)]
        kernels: bool,
    },
    /// Write a generated action file.
    Fixture {
        #[command(subcommand)]
        kind: FixtureKind,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureKind {
    /// Translation action of Z/n on Q^n.
    Regular {
        n: u64,
        #[command(flatten)]
        out: Output,
    },
    /// G = Z/p^3 x Z/q^2 with the component of chi_(p^2, q).
    PaperExample {
        p: u64,
        q: u64,
        /// Multiplicity of the chi_(p^2, q) component.
        #[arg(long, default_value_t = 1)]
        mult: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Direct sum of irreducible rational representations.
    Semisimple {
        #[arg(long, value_parser = parse_moduli, value_delimiter = ',', required = true)]
        group: Vec<u64>,
        /// Character exponents and multiplicity, e.g. 4,3:2.
        #[arg(long = "component", value_parser = parse_component, required = true)]
        components: Vec<(Vec<u64>, u64)>,
        #[command(flatten)]
        out: Output,
    },
    /// A semisimple action conjugated by a seeded random unimodular matrix.
    RandomConjugated {
        #[arg(long, value_parser = parse_moduli, value_delimiter = ',', required = true)]
        group: Vec<u64>,
        #[arg(long = "component", value_parser = parse_component)]
        components: Vec<(Vec<u64>, u64)>,
        /// Pick random components up to this total dimension instead.
        #[arg(long, conflicts_with = "components")]
        max_dim: Option<u64>,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct Output {
    /// Output file (stdout if omitted).
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

fn parse_moduli(s: &str) -> Result<u64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("invalid modulus {s:?}"))
}

fn parse_component(s: &str) -> Result<(Vec<u64>, u64), String> {
    let (exps, mult) = match s.split_once(':') {
        Some((e, m)) => (
            e,
            m.parse()
                .map_err(|_| format!("invalid multiplicity in {s:?}"))?,
        ),
        None => (s, 1),
    };
    let exps = exps
        .split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| format!("invalid exponent in {s:?}"))
        })
        .collect::<Result<Vec<u64>, String>>()?;
    Ok((exps, mult))
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_input() {
        2
    } else if matches!(e, Error::Internal(_)) {
        4
    } else {
        3
    }
}

fn check_order(group: &FinAbGroup, max: u64) -> Result<(), Error> {
    if group.order() > max {
        return Err(Error::OrderTooLarge {
            order: group.order(),
            max,
        });
    }
    Ok(())
}

fn load(path: &Path, max: u64) -> Result<GAction, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    let file = ActionFile::parse(&text)?;
    check_order(&file.group, max)?;
    Ok(file.to_action()?)
}

fn render(json: bool, value: serde_json::Value, text: String) -> String {
    if json {
        io::to_pretty_json(&value)
    } else {
        text
    }
}

fn components(list: &[(Vec<u64>, u64)]) -> Vec<(GroupElement, u64)> {
    list.iter()
        .map(|(e, m)| (GroupElement(e.clone()), *m))
        .collect()
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Decompose { file } => {
            let action = load(file, cli.max_order)?;
            let mut report = action.isotypical_decomposition()?;
            if cli.check_plausibility {
                let extra = report.plausibility_warnings();
                report.warnings.extend(extra);
            }
            Ok(render(
                cli.json,
                io::report_json(&report),
                io::report_text(&report),
            ))
        }
        Command::Roan { file } => {
            let action = load(file, cli.max_order)?;
            let group = action.group();
            let invariants = group.invariants();
            if invariants.len() > 1 {
                return Err(Error::NonCyclicGroup(invariants).into());
            }
            let generator = Subgroup::trivial(group)
                .quotient()
                .generator
                .expect("cyclic group has a generator");
            let report = roan_decomposition(&action.rho(&generator), group.order())?;
            let mut value = io::roan_json(&report);
            value["generator"] = serde_json::json!(generator.0);
            let text = format!("generator {generator}  (order {})\n", group.order())
                + &io::roan_text(&report);
            Ok(render(cli.json, value, text))
        }
        Command::Verify { file } => {
            let action = load(file, cli.max_order)?;
            let m = verify_theorem31(&action)?;
            Ok(render(cli.json, m.to_json(), io::matching_text(&m)))
        }
        Command::Characters { group } => {
            let g = FinAbGroup::new(group.clone())?;
            check_order(&g, cli.max_order)?;
            let irreps = rational_irreps(&g);
            Ok(render(
                cli.json,
                io::irreps_json(&g, &irreps),
                io::irreps_text(&g, &irreps),
            ))
        }
        Command::Subgroups { group, kernels } => {
            let g = FinAbGroup::new(group.clone())?;
            check_order(&g, cli.max_order)?;
            let ks: Vec<Subgroup> = if *kernels {
                rational_irreps(&g).into_iter().map(|w| w.kernel).collect()
            } else {
                Vec::new()
            };
            Ok(render(
                cli.json,
                io::kernels_json(&g, &ks)?,
                io::kernels_text(&g, &ks)?,
            ))
        }
        Command::Fixture { kind } => {
            let (spec, out) = match kind {
                FixtureKind::Regular { n, out } => (FixtureSpec::Regular { n: *n }, out),
                FixtureKind::PaperExample { p, q, mult, out } => (
                    FixtureSpec::PaperExample {
                        p: *p,
                        q: *q,
                        multiplicity: *mult,
                    },
                    out,
                ),
                FixtureKind::Semisimple {
                    group,
                    components: c,
                    out,
                } => (
                    FixtureSpec::Semisimple {
                        group: group.clone(),
                        components: components(c),
                    },
                    out,
                ),
                FixtureKind::RandomConjugated {
                    group,
                    components: c,
                    max_dim,
                    seed,
                    out,
                } => {
                    let spec = match max_dim {
                        Some(d) => random_conjugated_spec(group, *d, *seed)?,
                        None if c.is_empty() => {
                            return Err(Error::InvalidParameter(
                                "give --component or --max-dim".into(),
                            )
                            .into())
                        }
                        None => FixtureSpec::RandomConjugated {
                            group: group.clone(),
                            components: components(c),
                            seed: *seed,
                        },
                    };
                    (spec, out)
                }
            };
            let text = make_fixture(&spec)?.to_json_string();
            match &out.path {
                Some(p) => {
                    std::fs::write(p, text)
                        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
