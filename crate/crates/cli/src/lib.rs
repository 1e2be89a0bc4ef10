//! Command-line front end: argument parsing, JSON input and report rendering.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use eqcoh::cyclic_cohomology::{group_cohomology, GModule};
use eqcoh::equichern::{
    bg_mul, c1_power_character, gysin_pair_injective, gysin_unit_check, p1_graded_piece, p1_gysin,
    p1_mul, top_chern_leading_coefficient, top_chern_tensor_character, BgPolynomial, FixedPoint,
    IsotypicRanks, P1RingElement,
};
use eqcoh::intlinalg::{cokernel, smith_normal_form};
use eqcoh::spaces::{
    bg_cohomology, bg_reduced_cohomology, cone_lens_compact, equivariant_rep_compact,
    exactness_check, kunneth_degree, lens_cohomology, lens_homology, AbMap, GradedGroup,
};
use eqcoh::surface_verifier::{check_main_theorem, double_cover_family, SurfaceWithAction};
use eqcoh::{FinAbGroup, IntMatrix};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "eqcoh-cli", version, about = "Cohomology of cyclic group actions")]
pub struct Cli {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub output: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smith normal form of an integer matrix given as [[..], ..]
    Snf { input: String },
    /// H^i(Z/m, A) for a module {"m": .., "action": [[..]]}
    Groupcoh {
        input: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Cohomology tables of classifying spaces, lens spaces and cones
    Space {
        #[arg(long, value_enum)]
        kind: SpaceKind,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
    /// Kunneth formula for {"a": table, "b": table}
    Kunneth {
        input: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Exactness of a sequence of maps {"labels": [..], "maps": [..]}
    LesCheck { input: String },
    /// Compare H^1(G, H^2(M, Z)) with the fixed-curve side
    VerifySurface { input: String },
    /// Double cover of the plane branched in a curve of degree 2d
    DoubleCover {
        #[arg(long)]
        d: u64,
    },
    /// Arithmetic in H^*(BZ/m) = Z[x]/(mx)
    Chern {
        #[command(subcommand)]
        op: ChernOp,
    },
    /// Arithmetic in H^*_G(P^1) = Z[x, h]/(mx, h^2 + xh)
    P1Ring {
        #[command(subcommand)]
        op: P1Op,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceKind {
    Bg,
    BgReduced,
    Lens,
    LensHomology,
    ConeLens,
    EquivariantRep,
}

#[derive(Subcommand, Debug)]
pub enum ChernOp {
    /// Product of two classes
    Mul {
        #[arg(long)]
        m: u64,
        p: String,
        q: String,
    },
    /// (jx)^k
    Power {
        #[arg(long)]
        m: u64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long)]
        k: usize,
    },
    /// Top Chern class of E (x) rho^j from c = 1,c1,...,cn
    Top {
        #[arg(long)]
        m: u64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        chern: Vec<i64>,
    },
    /// Leading coefficient and unit check for isotypic ranks n_0,...,n_{m-1}
    Ranks {
        #[arg(long)]
        m: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        ranks: Vec<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum P1Op {
    /// Product of two classes
    Mul {
        #[arg(long)]
        m: u64,
        a: String,
        b: String,
    },
    /// Gysin image of a BG class at a fixed point
    Gysin {
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum)]
        point: Point,
        class: String,
    },
    /// The group in one degree
    Piece {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        degree: usize,
    },
    /// Injectivity of the two Gysin maps mod m
    Injectivity {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Replace the pair (h + x, h) by two other degree-2 classes
        #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"])]
        pair: Option<Vec<String>>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Point {
    Zero,
    Infinity,
}

/// Failure of a command, with its exit status.
#[derive(Debug)]
pub enum CliError {
    /// Malformed or invalid input; exit status 2.
    Schema(String),
    /// Anything else; exit status 1.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Schema(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<eqcoh::Error> for CliError {
    fn from(e: eqcoh::Error) -> Self {
        CliError::Schema(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Inline JSON if the argument looks like JSON, otherwise a file path.
fn read_input<T: DeserializeOwned>(input: &str) -> CliResult<T> {
    let trimmed = input.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        input.to_string()
    } else {
        std::fs::read_to_string(Path::new(input))
            .map_err(|e| CliError::Schema(format!("cannot read {input}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("invalid input: {e}")))
}

struct Report {
    json: Value,
    text: String,
}

fn to_json<T: Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

/// Runs one command and returns the rendered report.
pub fn run(cli: &Cli) -> CliResult<String> {
    let report = match &cli.command {
        Command::Snf { input } => snf(input)?,
        Command::Groupcoh { input, max_degree } => groupcoh(input, *max_degree)?,
        Command::Space {
            kind,
            m,
            n,
            max_degree,
        } => space(*kind, *m, *n, *max_degree)?,
        Command::Kunneth { input, max_degree } => kunneth(input, *max_degree)?,
        Command::LesCheck { input } => les_check(input)?,
        Command::VerifySurface { input } => {
            let s: SurfaceWithAction = read_input(input)?;
            let v = check_main_theorem(&s);
            Report {
                json: to_json(&v)?,
                text: v.to_string(),
            }
        }
        Command::DoubleCover { d } => {
            let c = double_cover_family(*d)?;
            Report {
                json: to_json(&c)?,
                text: c.to_string(),
            }
        }
        Command::Chern { op } => chern(op)?,
        Command::P1Ring { op } => p1(op)?,
    };
    Ok(match cli.output {
        Format::Json => serde_json::to_string_pretty(&report.json)
            .map_err(|e| CliError::Internal(e.to_string()))?,
        Format::Text => report.text.trim_end().to_string(),
    })
}

fn snf(input: &str) -> CliResult<Report> {
    let a: IntMatrix = read_input(input)?;
    let cert = smith_normal_form(&a);
    let diagonal: Vec<String> = cert.diagonal().iter().map(ToString::to_string).collect();
    let coker = cokernel(&a);
    let json = json!({
        "u": to_json(&cert.u)?,
        "d": to_json(&cert.d)?,
        "v": to_json(&cert.v)?,
        "diagonal": diagonal,
        "rank": cert.rank(),
        "cokernel": coker.to_string(),
    });
    let text = format!(
        "U = {}\nD = {}\nV = {}\nrank = {}\ncokernel = {}",
        cert.u,
        cert.d,
        cert.v,
        cert.rank(),
        coker
    );
    Ok(Report { json, text })
}

fn table_report(table: &GradedGroup, header: String) -> CliResult<Report> {
    Ok(Report {
        json: to_json(table)?,
        text: format!("{header}\n{table}"),
    })
}

fn groupcoh(input: &str, max_degree: usize) -> CliResult<Report> {
    let a: GModule = read_input(input)?;
    let entries: Vec<FinAbGroup> = (0..=max_degree).map(|i| group_cohomology(&a, i)).collect();
    let table = GradedGroup::truncated(entries);
    table_report(
        &table,
        format!("H^i(Z/{}, A), rank A = {}", a.order(), a.rank()),
    )
}

fn space(kind: SpaceKind, m: u64, n: usize, max_degree: usize) -> CliResult<Report> {
    if m < 2 {
        return Err(CliError::Schema(format!("--m must be at least 2, got {m}")));
    }
    if n < 1 {
        return Err(CliError::Schema("--n must be at least 1".into()));
    }
    let (table, header) = match kind {
        SpaceKind::Bg => (bg_cohomology(m, max_degree), format!("H^*(BZ/{m})")),
        SpaceKind::BgReduced => (bg_reduced_cohomology(m, max_degree), format!("reduced H^*(BZ/{m})")),
        SpaceKind::Lens => (lens_cohomology(n, m), format!("H^*(L_{}({m}))", 2 * n - 1)),
        SpaceKind::LensHomology => (lens_homology(n, m), format!("H_*(L_{}({m}))", 2 * n - 1)),
        SpaceKind::ConeLens => (cone_lens_compact(n, m), format!("H^*_c(C^{n}/(Z/{m}))")),
        SpaceKind::EquivariantRep => (
            equivariant_rep_compact(n, m, max_degree),
            format!("H^*_cG(C^{n}), G = Z/{m}"),
        ),
    };
    table_report(&table, header)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KunnethInput {
    a: GradedGroup,
    b: GradedGroup,
}

fn kunneth(input: &str, max_degree: usize) -> CliResult<Report> {
    let k: KunnethInput = read_input(input)?;
    let entries = (0..=max_degree)
        .map(|d| kunneth_degree(&k.a, &k.b, d))
        .collect::<eqcoh::Result<Vec<_>>>()?;
    let table = GradedGroup::truncated(entries);
    table_report(&table, "H^*(A x B)".into())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SequenceInput {
    Labeled {
        #[serde(default)]
        labels: Vec<String>,
        maps: Vec<AbMap>,
    },
    Bare(Vec<AbMap>),
}

fn les_check(input: &str) -> CliResult<Report> {
    let (labels, maps) = match read_input::<SequenceInput>(input)? {
        SequenceInput::Labeled { labels, maps } => (labels, maps),
        SequenceInput::Bare(maps) => (Vec::new(), maps),
    };
    if !labels.is_empty() && labels.len() != maps.len() + 1 {
        return Err(CliError::Schema(format!(
            "{} labels for {} maps; expected {}",
            labels.len(),
            maps.len(),
            maps.len() + 1
        )));
    }
    let report = exactness_check(&maps)?;
    let label = |k: usize| labels.get(k).cloned().unwrap_or_else(|| format!("node {k}"));
    let nodes: Vec<Value> = report
        .nodes
        .iter()
        .map(|n| {
            json!({
                "node": n.node,
                "label": label(n.node),
                "group": n.group.to_string(),
                "complex": n.complex,
                "homology": n.homology.as_ref().map(ToString::to_string),
                "exact": n.exact,
            })
        })
        .collect();
    let failing: Vec<String> = report.failing_nodes().into_iter().map(label).collect();
    let mut text = String::new();
    for n in &report.nodes {
        let status = match (&n.homology, n.exact) {
            (_, true) => "exact".to_string(),
            (Some(h), false) => format!("homology {h}"),
            (None, false) => "not a complex".to_string(),
        };
        let _ = writeln!(text, "{:<14} {:<12} {status}", label(n.node), n.group.to_string());
    }
    let _ = write!(text, "exact: {}", if report.is_exact() { "yes" } else { "no" });
    Ok(Report {
        json: json!({ "exact": report.is_exact(), "failing": failing, "nodes": nodes }),
        text,
    })
}

fn chern(op: &ChernOp) -> CliResult<Report> {
    let poly = |p: BgPolynomial| Report {
        json: json!({ "m": p.modulus(), "class": p.to_string() }),
        text: p.to_string(),
    };
    Ok(match op {
        ChernOp::Mul { m, p, q } => {
            let p = BgPolynomial::parse(*m, p)?;
            let q = BgPolynomial::parse(*m, q)?;
            poly(bg_mul(&p, &q)?)
        }
        ChernOp::Power { m, j, k } => poly(c1_power_character(*m, *j, *k)?),
        ChernOp::Top { m, j, chern } => poly(top_chern_tensor_character(chern, *j, *m)?),
        ChernOp::Ranks { m, ranks } => {
            let r = IsotypicRanks::new(*m, ranks)?;
            let lead = top_chern_leading_coefficient(&r);
            let unit = gysin_unit_check(&r);
            Report {
                json: json!({ "m": m, "ranks": r.ranks(), "leading_coefficient": lead, "unit": unit }),
                text: format!(
                    "leading coefficient = {lead} mod {m}\nunit: {}",
                    if unit { "yes" } else { "no" }
                ),
            }
        }
    })
}

fn p1(op: &P1Op) -> CliResult<Report> {
    let elem = |e: P1RingElement| Report {
        json: json!({ "m": e.modulus(), "class": e.to_string() }),
        text: e.to_string(),
    };
    Ok(match op {
        P1Op::Mul { m, a, b } => {
            let a = P1RingElement::parse(*m, a)?;
            let b = P1RingElement::parse(*m, b)?;
            elem(p1_mul(&a, &b)?)
        }
        P1Op::Gysin { m, point, class } => {
            let class = BgPolynomial::parse(*m, class)?;
            let point = match point {
                Point::Zero => FixedPoint::Zero,
                Point::Infinity => FixedPoint::Infinity,
            };
            elem(p1_gysin(*m, point, &class)?)
        }
        P1Op::Piece { m, degree } => {
            let g = p1_graded_piece(*m, *degree);
            Report {
                json: json!({ "m": m, "degree": degree, "group": g.to_string() }),
                text: format!("H^{degree}_G(P^1) = {g}"),
            }
        }
        P1Op::Injectivity {
            m,
            max_degree,
            pair,
        } => {
            let (left, right) = match pair {
                Some(p) => (P1RingElement::parse(*m, &p[0])?, P1RingElement::parse(*m, &p[1])?),
                None => (
                    FixedPoint::Zero.gysin_class(*m)?,
                    FixedPoint::Infinity.gysin_class(*m)?,
                ),
            };
            let ok = gysin_pair_injective(*m, *max_degree, &left, &right)?;
            Report {
                json: json!({
                    "m": m,
                    "max_degree": max_degree,
                    "maps": [left.to_string(), right.to_string()],
                    "injective": ok,
                }),
                text: format!(
                    "({left}, {right}) mod {m} up to degree {max_degree}: {}",
                    if ok { "injective" } else { "not injective" }
                ),
            }
        }
    })
}
