//! `msign`: sign conventions and commutation laws for bigraded homotopy rings.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 scan violations.

mod args;

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write as _};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use msign::algebra::{graded_commutator, normalize_names, transport_check};
use msign::catalog::{free_presentation, sensitivity_table, universal_presentation};
use msign::cocycles::{cocycle_identity_witness, count_classes, Grid};
use msign::conventions::{base_kappa, error_factor, twist_ratio};
use msign::realize::{decision_table, target_sign_compat, RealizationModel};
use msign::scan::{check_conjecture, parse_table, render_table, sample_table, TableFormat};
use msign::{Bidegree, Coef, CoefMode, Convention, ProductExpr, UnitExp, UnitSubgroup};

use args::{ModeArgs, TwistArgs};

#[derive(Parser, Debug)]
#[command(name = "msign", version, about = "Sign conventions and commutation laws for bigraded homotopy rings")]
struct Cli {
    /// Emit a JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Commutation unit w(a, b) with x y = w(a, b) y x
    Commute {
        #[arg(long, default_value = "reference")]
        convention: String,
        #[arg(long, allow_hyphen_values = true)]
        deg_a: Bidegree,
        #[arg(long, allow_hyphen_values = true)]
        deg_b: Bidegree,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Commutation law of the reference product
    Kappa {
        #[arg(long, allow_hyphen_values = true)]
        deg_a: Bidegree,
        #[arg(long, allow_hyphen_values = true)]
        deg_b: Bidegree,
    },
    /// Ratio of the eps-twisted and reference commutation laws
    ErrorFactor {
        #[arg(long, allow_hyphen_values = true)]
        deg_a: Bidegree,
        #[arg(long, allow_hyphen_values = true)]
        deg_b: Bidegree,
    },
    /// Arithmetic in {1, -1, eps, -eps} and Z[eps]/(eps^2 - 1)
    #[command(subcommand)]
    Unit(UnitCommand),
    /// Bilinear cocycles, coboundaries and twist ratios
    #[command(subcommand)]
    Cocycle(CocycleCommand),
    /// Number of cohomology classes of cocycles valued in a unit subgroup
    Classes {
        /// trivial, minus-one, eps, minus-eps or full
        #[arg(long, allow_hyphen_values = true)]
        units: UnitSubgroup,
    },
    /// Normal form of an expression
    Eval {
        #[arg(long, default_value = "reference")]
        convention: String,
        /// catalog, catalog-tau, free, free-tau or a JSON file
        #[arg(long, default_value = "catalog")]
        pres: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Normal form of a word of generators
    Normalize {
        #[arg(long, default_value = "reference")]
        convention: String,
        #[arg(long, default_value = "catalog")]
        pres: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(required = true)]
        word: Vec<String>,
    },
    /// x y - w(deg x, deg y) y x
    Commutator {
        #[arg(long, default_value = "reference")]
        convention: String,
        #[arg(long, default_value = "catalog")]
        pres: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Compare the normal forms of an expression under two conventions
    Transport {
        #[arg(long, default_value = "catalog")]
        pres: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Which realizations are ring maps for which conventions
    Realize {
        /// betti, c2-underlying or geometric-fixed; all when omitted
        #[arg(long)]
        model: Option<RealizationModel>,
        /// All presets when omitted
        #[arg(long)]
        convention: Option<String>,
        /// Check bidegrees with entries in [-N, N]
        #[arg(long, default_value_t = 4)]
        grid: i64,
        /// Compare the realized law with the collapsed Koszul sign instead
        #[arg(long)]
        sign_compat: bool,
    },
    /// Which generator pairs have convention-dependent commutation laws
    Sensitivity {
        #[arg(long)]
        with_tau: bool,
        /// Use a presentation other than the catalog
        #[arg(long, conflicts_with = "with_tau")]
        pres: Option<String>,
    },
    /// Export a built-in presentation as JSON
    Catalog {
        #[arg(long)]
        with_tau: bool,
        /// Drop the relations
        #[arg(long)]
        free: bool,
    },
    /// Look for odd-weight classes with (1 - eps) x != 0
    Scan {
        /// CSV or JSON table, or - for stdin; the bundled sample when omitted
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        format: Option<TableFormat>,
        /// Print the table in this format instead of scanning it
        #[arg(long)]
        emit: Option<TableFormat>,
    },
}

#[derive(Subcommand, Debug)]
enum UnitCommand {
    /// Product of units
    Mul {
        #[arg(required = true, allow_hyphen_values = true)]
        units: Vec<UnitExp>,
    },
    /// x^n
    Pow {
        #[arg(allow_hyphen_values = true)]
        x: UnitExp,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Image of a coefficient a+b*eps in a quotient
    Specialize {
        #[arg(allow_hyphen_values = true)]
        c: Coef,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Whether a coefficient is invertible after specialization
    IsUnit {
        #[arg(allow_hyphen_values = true)]
        c: Coef,
        #[command(flatten)]
        mode: ModeArgs,
    },
}

#[derive(Subcommand, Debug)]
enum CocycleCommand {
    /// Value at a pair of bidegrees
    Eval {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long, allow_hyphen_values = true)]
        deg_a: Bidegree,
        #[arg(long, allow_hyphen_values = true)]
        deg_b: Bidegree,
    },
    /// The entries of a cocycle
    Show {
        #[command(flatten)]
        twist: TwistArgs,
    },
    /// Check the cocycle identity on a grid
    Check {
        #[command(flatten)]
        twist: TwistArgs,
        #[arg(long, default_value_t = 4)]
        grid: i64,
    },
    /// Coboundary of a quadratic cochain
    Coboundary {
        /// Cochain JSON, inline or a path: {"c1": .., "c2": .., "c12": .., "c11": .., "c22": ..}
        #[arg(long)]
        cochain: String,
    },
    /// Symmetry, class invariant and coboundary witness
    Class {
        #[command(flatten)]
        twist: TwistArgs,
    },
    /// Ratio of two conventions' twists and whether it is a coboundary
    Ratio {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        mode: ModeArgs,
    },
}

pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<msign::Error> for Failure {
    fn from(e: msign::Error) -> Self {
        Failure::input(e.to_string())
    }
}

/// Text and JSON renderings of one result, plus the exit code.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

impl Report {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Report {
            text: text.into(),
            json,
            code: 0,
        }
    }
}

fn expr(s: &str) -> Result<ProductExpr, Failure> {
    Ok(s.parse()?)
}

fn run(cli: Cli) -> Result<Report, Failure> {
    Ok(match cli.command {
        Command::Commute {
            convention,
            deg_a,
            deg_b,
            mode,
        } => {
            let conv = args::convention(&convention, &mode)?;
            let w = conv.commutation_unit(deg_a, deg_b);
            Report::new(
                w.to_string(),
                json!({"convention": conv.name, "mode": conv.mode, "a": deg_a, "b": deg_b, "unit": w}),
            )
        }
        Command::Kappa { deg_a, deg_b } => {
            let k = base_kappa(deg_a, deg_b);
            Report::new(k.to_string(), json!({"a": deg_a, "b": deg_b, "unit": k}))
        }
        Command::ErrorFactor { deg_a, deg_b } => {
            let e = error_factor(deg_a, deg_b);
            Report::new(e.to_string(), json!({"a": deg_a, "b": deg_b, "unit": e}))
        }
        Command::Unit(cmd) => unit(cmd),
        Command::Cocycle(cmd) => cocycle(cmd)?,
        Command::Classes { units } => {
            let n = count_classes(units);
            Report::new(n.to_string(), json!({"units": units.name(), "classes": n}))
        }
        Command::Eval {
            convention,
            pres,
            mode,
            expr: source,
        } => {
            let conv = args::convention(&convention, &mode)?;
            let pres = args::presentation(&pres)?;
            let e = msign::algebra::eval_expr(&expr(&source)?, &conv, &pres)?;
            let nf = e.render(&pres);
            Report::new(
                nf.clone(),
                json!({"convention": conv.name, "mode": conv.mode, "expr": source, "normal_form": nf,
                       "degree": e.degree()}),
            )
        }
        Command::Normalize {
            convention,
            pres,
            mode,
            word: names,
        } => {
            let conv = args::convention(&convention, &mode)?;
            let pres = args::presentation(&pres)?;
            let e = normalize_names(&names, &conv, &pres)?.specialize(conv.mode);
            let nf = e.render(&pres);
            Report::new(
                nf.clone(),
                json!({"convention": conv.name, "mode": conv.mode, "word": names, "normal_form": nf}),
            )
        }
        Command::Commutator {
            convention,
            pres,
            mode,
            x,
            y,
        } => {
            let conv = args::convention(&convention, &mode)?;
            let pres = args::presentation(&pres)?;
            // generic first, so the commutator sees the unspecialized factors
            let generic = conv.clone().with_mode(CoefMode::GENERIC);
            let ex = msign::algebra::eval_expr(&expr(&x)?, &generic, &pres)?;
            let ey = msign::algebra::eval_expr(&expr(&y)?, &generic, &pres)?;
            let c = graded_commutator(&ex, &ey, &conv, &pres)?;
            let nf = c.render(&pres);
            Report::new(
                nf.clone(),
                json!({"convention": conv.name, "mode": conv.mode, "x": x, "y": y, "commutator": nf,
                       "vanishes": c.is_zero()}),
            )
        }
        Command::Transport {
            pres,
            from,
            to,
            mode,
            expr: source,
        } => {
            let (a, b) = (args::convention(&from, &mode)?, args::convention(&to, &mode)?);
            let pres = args::presentation(&pres)?;
            let r = transport_check(&expr(&source)?, &a, &b, &pres)?;
            let mut text = if r.agree {
                "AGREE".to_string()
            } else {
                match r.discrepancy {
                    Some(d) => format!("DISAGREE discrepancy {d}"),
                    None => "DISAGREE".to_string(),
                }
            };
            write!(text, "\n{}: {}\n{}: {}", r.from, r.left, r.to, r.right).unwrap();
            Report::new(text, serde_json::to_value(&r).unwrap())
        }
        Command::Realize {
            model,
            convention,
            grid,
            sign_compat,
        } => realize(model, convention, grid, sign_compat)?,
        Command::Sensitivity { with_tau, pres } => {
            let pres = match pres {
                Some(p) => args::presentation(&p)?,
                None => universal_presentation(with_tau),
            };
            let rows = sensitivity_table(&pres);
            let mut text = String::new();
            for r in &rows {
                write!(text, "{} {} {} {}", r.x, r.y, r.factor, serde_json::to_value(r.status).unwrap().as_str().unwrap())
                    .unwrap();
                if let Some(g) = &r.rescued_by {
                    write!(text, " by {g}").unwrap();
                }
                text.push('\n');
            }
            text.pop();
            Report::new(text, json!({"pairs": rows}))
        }
        Command::Catalog { with_tau, free } => {
            let pres = if free {
                free_presentation(with_tau)
            } else {
                universal_presentation(with_tau)
            };
            let file = serde_json::to_value(pres.to_file()).unwrap();
            Report::new(serde_json::to_string_pretty(&file).unwrap(), file)
        }
        Command::Scan { table, format, emit } => scan(table, format, emit)?,
    })
}

fn unit(cmd: UnitCommand) -> Report {
    match cmd {
        UnitCommand::Mul { units } => {
            let p: UnitExp = units.iter().copied().product();
            Report::new(p.to_string(), json!({"factors": units, "unit": p}))
        }
        UnitCommand::Pow { x, n } => {
            let p = x.pow(n);
            Report::new(p.to_string(), json!({"base": x, "exponent": n, "unit": p}))
        }
        UnitCommand::Specialize { c, mode } => {
            let m = mode.apply(CoefMode::GENERIC);
            let s = m.specialize(&c);
            Report::new(s.to_string(), json!({"coef": c, "mode": m, "image": s}))
        }
        UnitCommand::IsUnit { c, mode } => {
            let m = mode.apply(CoefMode::GENERIC);
            let u = c.is_unit(m);
            Report::new(u.to_string(), json!({"coef": c, "mode": m, "is_unit": u}))
        }
    }
}

fn witness_triple(w: Option<[Bidegree; 3]>) -> (String, Value) {
    match w {
        None => ("COCYCLE".into(), json!({"cocycle": true})),
        Some([u, v, x]) => (
            format!("NOT_COCYCLE witness u={u} v={v} w={x}"),
            json!({"cocycle": false, "witness": {"u": u, "v": v, "w": x}}),
        ),
    }
}

fn cocycle(cmd: CocycleCommand) -> Result<Report, Failure> {
    Ok(match cmd {
        CocycleCommand::Eval { twist, deg_a, deg_b } => {
            let f = twist.resolve()?;
            let v = f.eval(deg_a, deg_b);
            Report::new(v.to_string(), json!({"a": deg_a, "b": deg_b, "unit": v}))
        }
        CocycleCommand::Show { twist } => {
            let f = twist.resolve()?;
            let [m11, m12, m21, m22] = f.entries();
            Report::new(
                format!("m11={m11} m12={m12} m21={m21} m22={m22}"),
                serde_json::to_value(f).unwrap(),
            )
        }
        CocycleCommand::Check { twist, grid } => {
            let f = twist.resolve()?;
            if grid < 0 {
                return Err(Failure::input("grid radius must be nonnegative"));
            }
            let (text, json) = witness_triple(cocycle_identity_witness(|a, b| f.eval(a, b), Grid::symmetric(grid)));
            Report::new(text, json)
        }
        CocycleCommand::Coboundary { cochain } => {
            let f = args::cochain(&cochain)?.coboundary();
            let [m11, m12, m21, m22] = f.entries();
            Report::new(
                format!("m11={m11} m12={m12} m21={m21} m22={m22}"),
                serde_json::to_value(f).unwrap(),
            )
        }
        CocycleCommand::Class { twist } => {
            let f = twist.resolve()?;
            let class = f.antisymmetrization();
            let witness = f.coboundary_witness();
            let text = match &witness {
                Some(b) => format!(
                    "COBOUNDARY witness c1={} c2={} c12={} c11={} c22={}",
                    b.c1, b.c2, b.c12, b.c11, b.c22
                ),
                None => format!("NOT_COBOUNDARY class {class}"),
            };
            Report::new(
                text,
                json!({"symmetric": f.is_symmetric(), "class": class, "is_coboundary": witness.is_some(),
                       "witness": witness}),
            )
        }
        CocycleCommand::Ratio { from, to, mode } => {
            let (a, b) = (args::convention(&from, &mode)?, args::convention(&to, &mode)?);
            let r = twist_ratio(&a, &b)?;
            let [m11, m12, m21, m22] = r.ratio.entries();
            let verdict = if r.is_coboundary { "COBOUNDARY" } else { "NOT_COBOUNDARY" };
            Report::new(
                format!("{verdict} m11={m11} m12={m12} m21={m21} m22={m22}"),
                json!({"from": a.name, "to": b.name, "ratio": r.ratio, "is_coboundary": r.is_coboundary}),
            )
        }
    })
}

fn realize(
    model: Option<RealizationModel>,
    convention: Option<String>,
    grid: i64,
    sign_compat: bool,
) -> Result<Report, Failure> {
    if grid < 0 {
        return Err(Failure::input("grid radius must be nonnegative"));
    }
    let grid = Grid::symmetric(grid);
    let models = match model {
        Some(m) => vec![m],
        None => RealizationModel::builtins(),
    };
    let convs = match &convention {
        Some(c) => vec![args::convention(c, &ModeArgs::default())?],
        None => Convention::presets().to_vec(),
    };
    let mut rows = decision_table(&convs, &models, grid);
    if sign_compat {
        let decisions = convs
            .iter()
            .flat_map(|c| models.iter().map(move |m| target_sign_compat(c, m, grid)));
        for (row, d) in rows.iter_mut().zip(decisions) {
            row.decision = d;
        }
    }
    let verdict = |d: &msign::realize::Decision| {
        let s = d.to_string();
        if sign_compat {
            s.replace("RING_HOM", "SIGN_COMPAT")
        } else {
            s
        }
    };
    let text = if rows.len() == 1 {
        verdict(&rows[0].decision)
    } else {
        rows.iter()
            .map(|r| format!("{} {} {}", r.convention, r.model, verdict(&r.decision)))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let check = if sign_compat { "sign-compat" } else { "ring-hom" };
    Ok(Report::new(text, json!({"check": check, "rows": rows})))
}

fn scan(table: Option<String>, format: Option<TableFormat>, emit: Option<TableFormat>) -> Result<Report, Failure> {
    let rows = match table.as_deref() {
        None => sample_table(),
        Some("-") => {
            let mut input = String::new();
            std::io::stdin()
                .read_to_string(&mut input)
                .map_err(|e| Failure::input(format!("stdin: {e}")))?;
            parse_table(&input, format.unwrap_or(TableFormat::Csv))?
        }
        Some(path) => {
            let input = fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
            parse_table(&input, format.unwrap_or_else(|| TableFormat::from_path(path)))?
        }
    };
    if let Some(out) = emit {
        let text = render_table(&rows, out);
        let json = serde_json::to_value(&rows).unwrap();
        return Ok(Report::new(text.trim_end().to_string(), json));
    }
    let violations = check_conjecture(&rows);
    let mut text = format!("{} rows, {} violations", rows.len(), violations.len());
    for v in &violations {
        write!(text, "\nVIOLATION {} stem={} weight={} source={}", v.name, v.stem, v.weight, v.source).unwrap();
    }
    let mut report = Report::new(text, json!({"rows": rows.len(), "violations": violations}));
    if !violations.is_empty() {
        report.code = 3;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    // a closed stdout (e.g. piped into head) is not an error worth reporting
    let emit = |text: &str| {
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    };
    match run(cli) {
        Ok(report) => {
            if json {
                emit(&serde_json::to_string_pretty(&report.json).unwrap());
            } else {
                emit(&report.text);
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            if json {
                emit(&json!({"error": f.message}).to_string());
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
