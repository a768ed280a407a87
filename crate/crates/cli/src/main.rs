use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use instanton::adhm::{
    adhm_to_monad, check_atiyah_pair, check_real_line_trivial, impose_quaternionic, plane_z4, solve_charge_one,
};
use instanton::algebra::{Field, FieldTag, Gaussian, GaussianRationals, Matrix, PrimeField, ReduceMod};
use instanton::checks::{
    check_end_dims, check_instanton_condition, check_koszul_dims, check_mayer_vietoris, check_quadric_splitting,
    check_tangent_dimension, check_tensor_vanishing, run_suite, summary_csv, CheckContext, CheckReport, SuiteOptions,
};
use instanton::hirzebruch::{
    aut_action, build_quadric_bundle, check_table_invariance, normalize_u1_slice, riemann_roch_check, t_action,
    AutLElement, ExtensionData,
};
use instanton::io::{
    adhm_from_json, adhm_to_json, extension_from_json, extension_to_json, monad_from_json, monad_to_json, roundtrip,
    AnyExtension, AnyMonad,
};
use instanton::monad::{sample_instanton, Line, Monad};
use instanton::with_monad;

#[derive(Parser)]
#[command(
    name = "instanton",
    version,
    about = "Exact computations with instanton monads on P3"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    /// Random points, lines or group elements to try.
    #[arg(long, default_value_t = 20, global = true)]
    trials: usize,
    /// Čech truncation bound (default: the minimal admissible one).
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Coefficient field for generated data: Q, Qi or Fp:<p>.
    #[arg(long, default_value = "Q", global = true)]
    field: String,
    /// Output path (default: standard output).
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Also write the CSV summary of the reports here.
    #[arg(long, global = true)]
    summary: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample a monad of rank r and charge n.
    Sample {
        #[arg(short = 'r')]
        r: usize,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Validate a monad file; exit 1 unless every check passes.
    Validate { file: PathBuf },
    /// Cohomology table h^i(F(k)) as CSV columns k,h0,h1,...
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value = "-4:2", allow_hyphen_values = true)]
        twists: String,
    },
    /// Vanishing for the tensor product of two monads.
    TensorCheck { file: PathBuf, other: PathBuf },
    /// Cohomology of End F.
    EndCheck { file: PathBuf },
    /// Dimension of the space of monads at a point.
    TangentCheck { file: PathBuf },
    /// Restriction to the plane {z_k = 0}.
    Restrict {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        drop: usize,
    },
    /// Splitting types on random lines.
    Splitting { file: PathBuf },
    /// Koszul dimension identities.
    KoszulCheck { file: PathBuf },
    /// Mayer-Vietoris assembly of h1(End F) on two planes.
    MayerVietoris { file: PathBuf },
    /// Splitting profile of the restriction to the quadric.
    QuadricSplit { file: PathBuf },
    /// Extension data on the quadric.
    Hirzebruch {
        #[command(subcommand)]
        op: HirzebruchCmd,
    },
    /// Quaternionic data.
    Adhm {
        #[command(subcommand)]
        op: AdhmCmd,
    },
    /// Every check on sampled monads over a grid of (r, n).
    Suite {
        #[arg(long, default_value = "2:1,2:2,3:3")]
        grid: String,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Parse and write back; exit 1 unless the bytes agree.
    Roundtrip { file: PathBuf },
}

#[derive(Subcommand)]
enum HirzebruchCmd {
    /// Random data of rank r with m points.
    Build {
        #[arg(short = 'r')]
        r: usize,
        #[arg(short = 'm')]
        m: usize,
    },
    /// Bring data to the slice where block III vanishes.
    Normalize { file: PathBuf },
    /// Apply a random automorphism and a random unit; reports whether the
    /// cohomology table is unchanged.
    Act { file: PathBuf },
}

#[derive(Subcommand)]
enum AdhmCmd {
    /// Charge-one data of even rank r.
    Solve {
        #[arg(short = 'r')]
        r: usize,
    },
    /// Recompute L_right from L_left.
    Impose { file: PathBuf },
    /// Monad of ADHM data; exit 1 unless accepted.
    Convert { file: PathBuf },
    /// Real lines and the plane-pair criterion for a monad over Q(i).
    RealCheck { file: PathBuf },
}

type Error = Box<dyn std::error::Error>;

/// What a command produced: data to write, reports, and whether a hard
/// assertion failed.
#[derive(Default)]
struct Outcome {
    data: Option<String>,
    reports: Vec<CheckReport>,
    failed: bool,
}

impl Outcome {
    fn data(s: String) -> Outcome {
        Outcome {
            data: Some(s),
            ..Outcome::default()
        }
    }

    fn reports(reports: Vec<CheckReport>) -> Outcome {
        let failed = reports.iter().any(|r| r.is_hard_failure());
        Outcome {
            reports,
            failed,
            ..Outcome::default()
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn load_monad(path: &Path) -> Result<AnyMonad, Error> {
    monad_from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn to_gaussian(m: &Monad<instanton::algebra::Rationals>) -> Monad<GaussianRationals> {
    m.map_field(&GaussianRationals, |x| Gaussian::new(x.clone(), BigRational::zero()))
}

fn load_qi(path: &Path) -> Result<Monad<GaussianRationals>, Error> {
    match load_monad(path)? {
        AnyMonad::Qi(m) => Ok(m),
        AnyMonad::Q(m) => Ok(to_gaussian(&m)),
        AnyMonad::Fp(_) => Err(format!("{}: expected a monad over Q or Qi", path.display()).into()),
    }
}

fn parse_range(s: &str) -> Result<(i32, i32), Error> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let (a, b): (i32, i32) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        return Err(format!("empty range {s:?}").into());
    }
    Ok((a, b))
}

fn parse_grid(s: &str) -> Result<Vec<(usize, usize)>, Error> {
    s.split(',')
        .map(|cell| {
            let (r, n) = cell
                .split_once(':')
                .ok_or_else(|| format!("expected r:n, got {cell:?}"))?;
            Ok((r.trim().parse()?, n.trim().parse()?))
        })
        .collect()
}

fn ctx(c: &Common) -> CheckContext {
    CheckContext::new(c.seed).with_bound(c.bound)
}

fn run_checks<F: ReduceMod>(c: &Common, m: &Monad<F>, which: &str) -> Result<Vec<CheckReport>, Error> {
    let ctx = ctx(c);
    Ok(match which {
        "end" => vec![check_end_dims(&ctx, m)?],
        "tangent" => vec![check_tangent_dimension(&ctx, m, None)?],
        "koszul" => vec![check_koszul_dims(&ctx, m)?],
        "mv" => vec![check_mayer_vietoris(&ctx, m)?],
        "quadric" => vec![check_quadric_splitting(&ctx, m)?],
        _ => unreachable!("known check"),
    })
}

fn validate<F: ReduceMod>(c: &Common, m: &Monad<F>) -> Result<Outcome, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let v = m.validate(c.trials, &mut rng)?;
    let mut out = Outcome::reports(vec![check_instanton_condition(m)]);
    out.failed |= !v.is_valid();
    let mut line = serde_json::to_string(&v)?;
    line.push('\n');
    out.data = Some(line);
    Ok(out)
}

fn cohomology<F: ReduceMod>(c: &Common, m: &Monad<F>, (a, b): (i32, i32)) -> Result<Outcome, Error> {
    let top = m.space().dim();
    let mut s = String::new();
    if c.format == Format::Csv {
        let heads: Vec<String> = (0..=top).map(|i| format!("h{i}")).collect();
        s.push_str(&format!("k,{}\n", heads.join(",")));
    }
    for k in a..=b {
        let h = m.cohomology(k)?;
        match c.format {
            Format::Csv => {
                let cols: Vec<String> = h.iter().map(|x| x.to_string()).collect();
                s.push_str(&format!("{k},{}\n", cols.join(",")));
            }
            Format::Json => s.push_str(&format!("{}\n", serde_json::json!({"k": k, "h": h}))),
        }
    }
    Ok(Outcome::data(s))
}

fn splitting<F: Field>(c: &Common, m: &Monad<F>) -> Result<Outcome, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let f = m.field().clone();
    let mut s = String::new();
    if c.format == Format::Csv {
        s.push_str("line,splitting\n");
    }
    for _ in 0..c.trials {
        let l = Line::random(&f, m.space(), &mut rng);
        let t = m.splitting_type(&l)?;
        let pts: Vec<Vec<String>> = (0..2)
            .map(|j| l.basis().column(j).iter().map(|x| f.format(x)).collect())
            .collect();
        match c.format {
            Format::Csv => {
                let p: Vec<String> = pts.iter().map(|p| p.join(" ")).collect();
                let d: Vec<String> = t.0.iter().map(|x| x.to_string()).collect();
                s.push_str(&format!("{},{}\n", p.join(";"), d.join(" ")));
            }
            Format::Json => s.push_str(&format!("{}\n", serde_json::json!({"line": pts, "splitting": t.0}))),
        }
    }
    Ok(Outcome::data(s))
}

fn hirzebruch<F: Field>(c: &Common, op: &HirzebruchCmd, e: ExtensionData<F>) -> Result<Outcome, Error> {
    let f = e.field().clone();
    match op {
        HirzebruchCmd::Build { .. } => {
            let p = build_quadric_bundle(e.clone())?;
            let mut out = Outcome::reports(vec![riemann_roch_check(&p)]);
            out.data = Some(extension_to_json(&e));
            Ok(out)
        }
        HirzebruchCmd::Normalize { .. } => {
            let (_, n) = normalize_u1_slice(&e)?;
            let mut out = Outcome::reports(vec![check_table_invariance("normalize", &e, &n)?]);
            out.data = Some(extension_to_json(&n));
            Ok(out)
        }
        HirzebruchCmd::Act { .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
            let (_, rho) = e.splitting();
            let w = AutLElement::random(&f, e.r(), rho, &mut rng, 3);
            let ring = e.ring();
            let t = loop {
                let coeffs: Vec<F::Elem> = (0..e.m())
                    .map(|_| instanton::algebra::random_small(&f, &mut rng, 3))
                    .collect();
                let t = ring.from_scalars(&coeffs);
                if ring.is_invertible(&t) {
                    break t;
                }
            };
            let we = aut_action(&w, &e)?;
            let twe = t_action(&t, &we)?;
            let reps = vec![
                check_table_invariance("aut", &e, &we)?,
                check_table_invariance("aut+t", &e, &twe)?,
            ];
            let mut out = Outcome::reports(reps);
            out.data = Some(extension_to_json(&twe));
            Ok(out)
        }
    }
}

fn run(c: &Common, cmd: &Cmd) -> Result<Outcome, Error> {
    Ok(match cmd {
        Cmd::Sample { r, n } => {
            let m = sample_instanton(*r, *n, c.seed)?;
            let s = match FieldTag::parse(&c.field)? {
                FieldTag::Rationals => monad_to_json(&m),
                FieldTag::GaussianRationals => monad_to_json(&to_gaussian(&m)),
                FieldTag::Prime(p) => monad_to_json(&m.reduce(&PrimeField::new(p)?)?),
            };
            Outcome::data(s)
        }
        Cmd::Validate { file } => with_monad!(&load_monad(file)?, m => validate(c, m)?),
        Cmd::Cohomology { file, twists } => {
            let range = parse_range(twists)?;
            with_monad!(&load_monad(file)?, m => cohomology(c, m, range)?)
        }
        Cmd::TensorCheck { file, other } => {
            let ctx = ctx(c);
            let rep = match (load_monad(file)?, load_monad(other)?) {
                (AnyMonad::Q(a), AnyMonad::Q(b)) => check_tensor_vanishing(&ctx, &a, &b)?,
                (AnyMonad::Qi(a), AnyMonad::Qi(b)) => check_tensor_vanishing(&ctx, &a, &b)?,
                (AnyMonad::Qi(a), AnyMonad::Q(b)) => check_tensor_vanishing(&ctx, &a, &to_gaussian(&b))?,
                (AnyMonad::Q(a), AnyMonad::Qi(b)) => check_tensor_vanishing(&ctx, &to_gaussian(&a), &b)?,
                (AnyMonad::Fp(a), AnyMonad::Fp(b)) if a.field() == b.field() => check_tensor_vanishing(&ctx, &a, &b)?,
                _ => return Err("the two monads live over incompatible fields".into()),
            };
            Outcome::reports(vec![rep])
        }
        Cmd::EndCheck { file } => Outcome::reports(with_monad!(&load_monad(file)?, m => run_checks(c, m, "end")?)),
        Cmd::TangentCheck { file } => {
            Outcome::reports(with_monad!(&load_monad(file)?, m => run_checks(c, m, "tangent")?))
        }
        Cmd::KoszulCheck { file } => {
            Outcome::reports(with_monad!(&load_monad(file)?, m => run_checks(c, m, "koszul")?))
        }
        Cmd::MayerVietoris { file } => Outcome::reports(with_monad!(&load_monad(file)?, m => run_checks(c, m, "mv")?)),
        Cmd::QuadricSplit { file } => {
            Outcome::reports(with_monad!(&load_monad(file)?, m => run_checks(c, m, "quadric")?))
        }
        Cmd::Restrict { file, drop } => {
            if !(1..=4).contains(drop) {
                return Err(format!("--drop must be 1..4, got {drop}").into());
            }
            let keep: Vec<usize> = (0..4).filter(|&i| i != drop - 1).collect();
            Outcome::data(with_monad!(&load_monad(file)?, m => {
                let f = *m.field();
                let a = Matrix::from_fn(&f, 4, 3, |i, j| if keep[j] == i { f.one() } else { f.zero() });
                monad_to_json(&m.restrict_to_plane(&a)?)
            }))
        }
        Cmd::Splitting { file } => with_monad!(&load_monad(file)?, m => splitting(c, m)?),
        Cmd::Hirzebruch { op } => match op {
            HirzebruchCmd::Build { r, m } => {
                let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
                match FieldTag::parse(&c.field)? {
                    FieldTag::Rationals => {
                        let f = instanton::algebra::Rationals;
                        hirzebruch(c, op, ExtensionData::random(&f, *r, *m, &mut rng, 5)?)?
                    }
                    FieldTag::GaussianRationals => {
                        hirzebruch(c, op, ExtensionData::random(&GaussianRationals, *r, *m, &mut rng, 5)?)?
                    }
                    FieldTag::Prime(p) => {
                        hirzebruch(c, op, ExtensionData::random(&PrimeField::new(p)?, *r, *m, &mut rng, 5)?)?
                    }
                }
            }
            HirzebruchCmd::Normalize { file } | HirzebruchCmd::Act { file } => {
                match extension_from_json(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))? {
                    AnyExtension::Q(e) => hirzebruch(c, op, e)?,
                    AnyExtension::Qi(e) => hirzebruch(c, op, e)?,
                    AnyExtension::Fp(e) => hirzebruch(c, op, e)?,
                }
            }
        },
        Cmd::Adhm { op } => match op {
            AdhmCmd::Solve { r } => {
                let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
                Outcome::data(adhm_to_json(&solve_charge_one(*r, &mut rng)?))
            }
            AdhmCmd::Impose { file } => {
                let d = adhm_from_json(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
                Outcome::data(adhm_to_json(&impose_quaternionic(d.left().to_vec())?))
            }
            AdhmCmd::Convert { file } => {
                let d = adhm_from_json(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
                let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
                let conv = adhm_to_monad(&d, c.trials, &mut rng)?;
                eprintln!("{}", serde_json::to_string(&conv.report)?);
                Outcome {
                    data: conv.monad.as_ref().map(monad_to_json),
                    reports: Vec::new(),
                    failed: !conv.report.accepted(),
                }
            }
            AdhmCmd::RealCheck { file } => {
                let m = load_qi(file)?;
                Outcome::reports(vec![
                    check_real_line_trivial(&m, c.trials, c.seed)?,
                    check_atiyah_pair(&m, &plane_z4(), c.seed)?,
                ])
            }
        },
        Cmd::Suite { grid, samples } => {
            let opts = SuiteOptions {
                grid: parse_grid(grid)?,
                seed: c.seed,
                samples: *samples,
                bound: c.bound,
                ..SuiteOptions::default()
            };
            Outcome::reports(run_suite(&opts)?)
        }
        Cmd::Roundtrip { file } => {
            let same = roundtrip(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            Outcome {
                data: Some(format!("{same}\n")),
                reports: Vec::new(),
                failed: !same,
            }
        }
    })
}

fn write(path: Option<&Path>, s: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, s).map_err(|e| format!("{}: {e}", p.display()).into()),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn emit(c: &Common, mut out: Outcome) -> Result<bool, Error> {
    for r in &mut out.reports {
        if !r.inputs.contains_key("version") {
            r.set_input("version", env!("CARGO_PKG_VERSION"));
        }
    }
    let reports = match c.format {
        Format::Json => out
            .reports
            .iter()
            .map(|r| format!("{}\n", r.to_json_line()))
            .collect::<String>(),
        Format::Csv if out.reports.is_empty() => String::new(),
        Format::Csv => summary_csv(&out.reports),
    };
    match out.data {
        // Data goes to the output; reports, if any, to standard error.
        Some(data) => {
            write(c.output.as_deref(), &data)?;
            eprint!("{reports}");
        }
        None => write(c.output.as_deref(), &reports)?,
    }
    if let Some(p) = &c.summary {
        write(Some(p), &summary_csv(&out.reports))?;
    }
    Ok(!out.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.common, &cli.cmd).and_then(|out| emit(&cli.common, out)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
