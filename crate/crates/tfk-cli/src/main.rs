use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use tfk::alexander::{generator_table_tsv, nabla_hat_limited, nabla_via_determinant, render_grid, state_label, GeneratorRow};
use tfk::diagram::examples::{appendix_example, pretzel_2m3, twist_column};
use tfk::diagram::TangleDiagram;
use tfk::pairing::{box_tensor, close_tangle, closing_type_a, ranks_tsv};
use tfk::pecmod::*;
use tfk::states::{enumerate_states_limited, lattice_reports, Site, DEFAULT_MAX_STATES};

mod builder;

/// Tangle invariants from diagrams and peculiar modules.
#[derive(Parser)]
#[command(name = "tfk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DiagramInput {
    /// A file, an inline `{{...}}` diagram, or `@appendix`, `@pretzel`, `@twist:N`.
    input: String,
    /// Restrict to one site: its open regions, as a word or comma-separated.
    #[arg(long)]
    site: Option<String>,
}

#[derive(Args)]
struct ModuleInput {
    /// A builder such as `crossing:+`, `twist:-3`, `pretzel`, `loop:bpdq`.
    #[arg(long, conflicts_with = "file")]
    builder: Option<String>,
    /// A module in text format.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a diagram.
    Validate(DiagramInput),
    /// The polynomial invariant per site.
    Nabla {
        #[command(flatten)]
        d: DiagramInput,
        /// Keep the `h` and `δ` gradings.
        #[arg(long)]
        hat: bool,
        /// Print a grid in two colours, e.g. `p,q`.
        #[arg(long)]
        grid: Option<String>,
        /// Cross-check against an independent computation (`det`).
        #[arg(long)]
        oracle: Option<String>,
    },
    /// Kauffman states with their labels.
    States(DiagramInput),
    /// Clock-move lattice checks per site.
    Lattice(DiagramInput),
    /// Print a peculiar module.
    Pecmod {
        #[command(flatten)]
        m: ModuleInput,
        #[arg(long)]
        dot: bool,
        /// Cancel identity arrows first.
        #[arg(long)]
        cancel: bool,
        /// Euler characteristic per site.
        #[arg(long)]
        euler: bool,
        /// Single-letter rank profile.
        #[arg(long)]
        ranks: bool,
        /// Loop decomposition.
        #[arg(long)]
        loops: bool,
    },
    /// Homology of the box tensor product with the closing structure.
    Pair {
        #[command(flatten)]
        m: ModuleInput,
        #[arg(long, default_value = "a")]
        site: char,
        /// Print the box complex as DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// Close a tangle two ways and compare.
    Close {
        #[command(flatten)]
        m: ModuleInput,
        #[arg(long, default_value = "a")]
        site: char,
    },
    /// Canonical text of a diagram or module.
    Export {
        /// A diagram input; omit when using `--builder` or `--file`.
        input: Option<String>,
        #[command(flatten)]
        m: ModuleInput,
        #[arg(long)]
        dot: bool,
    },
}

fn max_states() -> Result<usize> {
    match std::env::var("TFK_MAX_STATES") {
        Ok(v) => v.parse().with_context(|| format!("TFK_MAX_STATES={v}")),
        Err(_) => Ok(DEFAULT_MAX_STATES),
    }
}

fn load_diagram(input: &str) -> Result<TangleDiagram> {
    let d = match input {
        "@appendix" => appendix_example(),
        "@pretzel" => pretzel_2m3(),
        s if s.starts_with("@twist:") => twist_column(s[7..].parse().context("twist count")?)?,
        s if s.trim_start().starts_with('{') => s.parse()?,
        path => fs::read_to_string(path).with_context(|| format!("reading {path}"))?.trim().parse()?,
    };
    let errs = d.validate();
    if !errs.is_empty() {
        bail!("invalid diagram: {}", errs.join("; "));
    }
    Ok(d)
}

fn load_module(m: &ModuleInput) -> Result<PecModule> {
    match (&m.builder, &m.file) {
        (Some(b), _) => builder::build(b),
        (None, Some(path)) => Ok(fs::read_to_string(path).with_context(|| format!("reading {path}"))?.parse()?),
        (None, None) => bail!("need --builder or --file"),
    }
}

fn site_filter(d: &TangleDiagram, site: &Option<String>) -> Result<Option<Site>> {
    let Some(w) = site else { return Ok(None) };
    let regions: Vec<String> = if w.contains(',') { w.split(',').map(String::from).collect() } else { w.chars().map(String::from).collect() };
    for r in &regions {
        if !d.is_open(r) {
            bail!("{r} is not an open region");
        }
    }
    Ok(Some(Site::new(&regions)))
}

fn run(cli: Cli) -> Result<String> {
    let mut out = String::new();
    match cli.command {
        Command::Validate(i) => {
            let d = load_diagram(&i.input)?;
            let (_, warns) = d.validate_full();
            out.push_str("ok\n");
            for w in warns {
                out.push_str(&format!("warning\t{w}\n"));
            }
        }
        Command::Nabla { d: i, hat, grid, oracle } => {
            let d = load_diagram(&i.input)?;
            let only = site_filter(&d, &i.site)?;
            let all = nabla_hat_limited(&d, max_states()?)?;
            for (s, p) in all.iter().filter(|(s, _)| only.as_ref().map_or(true, |o| o == *s)) {
                let p = if hat { p.clone() } else { p.forget_h_delta() };
                match &grid {
                    Some(g) => {
                        let (c1, c2) = g.split_once(',').ok_or_else(|| anyhow!("--grid wants c1,c2"))?;
                        out.push_str(&format!("site {s}\n{}\n", render_grid(&p, c1, c2)?));
                    }
                    None => out.push_str(&format!("{s}\t{p}\n")),
                }
                if let Some(o) = &oracle {
                    if o != "det" {
                        bail!("unknown oracle {o}");
                    }
                    let q = nabla_via_determinant(&d, s)?;
                    if !p.forget_h_delta().eq_up_to_unit(&q) {
                        bail!("determinant disagrees at site {s}: {q}");
                    }
                    out.push_str(&format!("{s}\tdet\tok\n"));
                }
            }
        }
        Command::States(i) => {
            let d = load_diagram(&i.input)?;
            let only = site_filter(&d, &i.site)?;
            let states = enumerate_states_limited(&d, max_states()?)?;
            let mut rows = Vec::new();
            for (s, xs) in states.iter().filter(|(s, _)| only.as_ref().map_or(true, |o| o == *s)) {
                for x in xs {
                    rows.push(GeneratorRow { site: s.clone(), word: x.word(&d), label: state_label(&d, x) });
                }
            }
            out.push_str(&generator_table_tsv(&rows));
        }
        Command::Lattice(i) => {
            let d = load_diagram(&i.input)?;
            let only = site_filter(&d, &i.site)?;
            out.push_str("site\tstates\tclocked\tcounterclocked\tacyclic\tlattice\n");
            let mut bad = false;
            for r in lattice_reports(&d).iter().filter(|r| only.as_ref().map_or(true, |o| *o == r.site)) {
                let word = |v: &Vec<tfk::states::KauffmanState>| v.iter().map(|x| x.word(&d)).collect::<Vec<_>>().join(",");
                let lat = r.lattice.map_or("-".to_string(), |b| b.to_string());
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.site,
                    r.states,
                    word(&r.clocked),
                    word(&r.counterclocked),
                    r.acyclic,
                    lat
                ));
                bad |= !r.ok();
            }
            if bad {
                print!("{out}");
                bail!("lattice check failed");
            }
        }
        Command::Pecmod { m, dot, cancel, euler, ranks, loops } => {
            let mut m = load_module(&m)?;
            if cancel {
                m = m.cancel_all_identities()?;
            }
            if !m.check_curved() {
                bail!("module is not curved: {}", m.curvature_defects().join("; "));
            }
            if euler {
                for (i, p) in m.euler_characteristic()? {
                    out.push_str(&format!("{}\t{p}\n", site_letter(i)));
                }
            } else if ranks {
                out.push_str("letter\tdelta2\trank\n");
                for ((l, d), r) in m.rank_profile() {
                    out.push_str(&format!("{l}\t{d}\t{r}\n"));
                }
            } else if loops {
                let Some(ls) = loop_decompose(&m) else { bail!("not loop-type") };
                for l in ls {
                    out.push_str(&format!("{}\t{}\n", l.canonical_word(), l.generators.join(",")));
                }
            } else if dot {
                out.push_str(&m.to_dot());
            } else {
                out.push_str(&m.to_string());
            }
        }
        Command::Pair { m, site, dot } => {
            let m = load_module(&m)?.cancel_all_identities()?;
            let c = box_tensor(&closing_type_a(site)?, &m)?;
            if dot {
                out.push_str("digraph box {\n");
                for (i, n) in c.names.iter().enumerate() {
                    out.push_str(&format!("  n{i} [label=\"{n}\"];\n"));
                }
                for (i, ts) in c.d.iter().enumerate() {
                    for j in ts {
                        out.push_str(&format!("  n{i} -> n{j};\n"));
                    }
                }
                out.push_str("}\n");
            } else {
                out.push_str(&ranks_tsv(&c.homology()?));
            }
        }
        Command::Close { m, site } => {
            let r = close_tangle(&load_module(&m)?, site)?;
            out.push_str(&r.to_string());
        }
        Command::Export { input, m, dot } => match input {
            Some(i) => out.push_str(&format!("{}\n", load_diagram(&i)?)),
            None => {
                let m = load_module(&m)?;
                out.push_str(&if dot { m.to_dot() } else { m.to_string() });
            }
        },
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

