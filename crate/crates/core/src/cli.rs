//! Batch front end behind the `thetaklr` binary.
//!
//! Every command writes a plain-text report to stdout. Exit codes: 0 when all
//! checks pass, 1 when a mathematical check fails, 2 on input errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::characters::{ch_projective, ch_projective_pbw, shuffle, shuffle_plain, Character};
use crate::error::Error;
use crate::fmod::{build_crystal, parse_module, write_module, GradedModule};
use crate::ground::rational::fmt_short;
use crate::ground::{LaurentV, Matrix};
use crate::hecke::{check_ei_compat, check_params, inverse_transport, transport, HeckeModule, HeckeParams};
use crate::klr::{verify_relations, Flavor, PbwElement, Shape, SkewElement};
use crate::quiver::{parse_config, parse_nu, parse_seq, DimVector, Quiver, Seq};

/// Largest rank any command accepts.
pub const MAX_RANK: usize = 3;

#[derive(Parser, Debug)]
#[command(name = "thetaklr", version, about = "Exact computations in KLR algebras of type B and affine Hecke transport")]
pub struct RunConfig {
    /// quiver configuration file (abstract or [hecke] form)
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "hecke")]
    pub quiver: Option<PathBuf>,
    /// inline Hecke data, e.g. "values=2,8,1/2,1/8;p=2;q=2"
    #[arg(long, global = true, value_name = "SPEC")]
    pub hecke: Option<String>,
    /// dimension vector, e.g. "2+1/2" or "2*2+2*1/2"
    #[arg(long, global = true)]
    pub nu: Option<String>,
    /// rank m (verify enumerates every dimension vector of rank ≤ m)
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// crystal depth
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// output file (DOT for crystal, module file for hecke)
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// negative control: flip the sign of the Q-polynomials
    #[arg(long = "corrupt-Q", global = true)]
    pub corrupt_q: bool,
    #[arg(long, global = true, value_enum, default_value_t = FlavorArg::B)]
    pub flavor: FlavorArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    B,
    A,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::B => Flavor::B,
            FlavorArg::A => Flavor::A,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the defining relations (KLR algebra, or a Hecke module file).
    Verify {
        /// verify this Hecke module file instead
        #[arg(long, value_name = "FILE")]
        hecke_module: Option<PathBuf>,
    },
    /// PBW basis size and normal forms of words.
    Pbw {
        /// generator word, e.g. "sigma1 pi kappa2"
        #[arg(long)]
        word: Option<String>,
        /// idempotent the word acts on, e.g. "(2,8)"
        #[arg(long)]
        seq: Option<String>,
    },
    /// Graded dimension of 1_i R 1_j.
    Gdim {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Projective characters by the shuffle route and the PBW route.
    Character {
        /// one sequence; default: every sequence of --nu
        #[arg(long)]
        seq: Option<String>,
    },
    /// ch(θR_a) ⊛ ch(R_b) against ch(θR_{ab}).
    Shuffle {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Crystal graph of simple modules up to --depth.
    Crystal,
    /// Transport to the affine Hecke algebra.
    Hecke {
        /// KLR module file to transport
        #[arg(long, value_name = "FILE", conflicts_with = "inverse")]
        module: Option<PathBuf>,
        /// Hecke module file to transport back
        #[arg(long, value_name = "FILE")]
        inverse: Option<PathBuf>,
    },
}

/// Why a command stopped early.
#[derive(Debug)]
enum Fail {
    Input(String),
    Math(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        use Error::*;
        match e {
            ClosureViolation(_) | SimplicityCertificationFailed(_) | NoSelfdualShift(_) | InvalidModule(_) | NonDivisible(_)
            | SingularDenominator(_) | NonPolynomialResult | InternalDivisionFailure(_) | NonCommuting | EigenvalueOutsideWindow(_)
            | NonSplitSpectrum => Fail::Math(e.to_string()),
            _ => Fail::Input(e.to_string()),
        }
    }
}

struct Outcome {
    report: String,
    ok: bool,
}

type CmdResult = std::result::Result<Outcome, Fail>;

/// Parses arguments, runs the command, writes the report; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(&cfg) {
        Ok(o) => {
            let _ = out.write_all(o.report.as_bytes());
            let verdict = if o.ok { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "verdict: {verdict}");
            i32::from(!o.ok)
        }
        Err(Fail::Math(m)) => {
            let _ = writeln!(err, "error: {m}");
            let _ = writeln!(out, "verdict: FAIL");
            1
        }
        Err(Fail::Input(m)) => {
            let _ = writeln!(err, "input error: {m}");
            2
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn write_out(path: &Option<PathBuf>, text: &str, report: &mut String) -> std::result::Result<(), Fail> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| Fail::Input(format!("{}: {e}", p.display())))?;
        writeln!(report, "wrote {}", p.display()).unwrap();
    }
    Ok(())
}

/// The quiver and, when known, the Hecke parameters it came from.
fn load_quiver(cfg: &RunConfig) -> std::result::Result<(Arc<Quiver>, Option<HeckeParams>), Fail> {
    let (q, params) = match (&cfg.quiver, &cfg.hecke) {
        (Some(path), None) => {
            let c = parse_config(&read(path)?).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?;
            (c.quiver, c.hecke.map(|(_, p)| p))
        }
        (None, Some(s)) => {
            let (values, params) = HeckeParams::parse_inline(s)?;
            (Quiver::build_from_params(&values, &params)?, Some(params))
        }
        _ => return Err(Fail::Input("give exactly one of --quiver FILE or --hecke SPEC".into())),
    };
    let q = if cfg.corrupt_q { q.with_corrupted_q() } else { q };
    Ok((Arc::new(q), params))
}

fn guard(m: usize) -> std::result::Result<(), Fail> {
    if m > MAX_RANK {
        return Err(Error::RankTooLarge(m).into());
    }
    Ok(())
}

fn shape_for(q: &Arc<Quiver>, flavor: Flavor, nu: &str) -> std::result::Result<Arc<Shape>, Fail> {
    let nu = parse_nu(q, nu)?;
    let m = match flavor {
        Flavor::B => nu.size() / 2,
        Flavor::A => nu.size(),
    };
    guard(m as usize)?;
    Ok(Shape::new(q.clone(), flavor, nu)?)
}

/// Every dimension vector of rank ≤ m.
fn all_nus(q: &Quiver, flavor: Flavor, m: usize) -> Vec<DimVector> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<(usize, DimVector, usize)> = vec![(0, DimVector::zero(q.n()), 0)];
    while let Some((from, nu, r)) = stack.pop() {
        seen.insert(nu.0.clone());
        if r == m {
            continue;
        }
        for i in from..q.n() {
            let mut x = nu.clone();
            x.add_vertex(i, 1);
            if flavor == Flavor::B {
                x.add_vertex(q.theta(i), 1);
            }
            stack.push((i, x, r + 1));
        }
    }
    seen.into_iter().map(DimVector).collect()
}

fn execute(cfg: &RunConfig) -> CmdResult {
    let (q, params) = load_quiver(cfg)?;
    let flavor: Flavor = cfg.flavor.into();
    match &cfg.command {
        Command::Verify { hecke_module } => match hecke_module {
            Some(path) => cmd_verify_hecke(path),
            None => cmd_verify(cfg, &q, flavor),
        },
        Command::Pbw { word, seq } => cmd_pbw(cfg, &q, flavor, word.as_deref(), seq.as_deref()),
        Command::Gdim { left, right } => cmd_gdim(&q, flavor, left, right),
        Command::Character { seq } => cmd_character(cfg, &q, seq.as_deref()),
        Command::Shuffle { left, right } => cmd_shuffle(&q, left, right),
        Command::Crystal => cmd_crystal(cfg, &q),
        Command::Hecke { module, inverse } => {
            let params = params.ok_or_else(|| match (0..q.n()).find(|&i| q.value(i).is_err()) {
                Some(i) => Fail::from(Error::MissingVertexValue(q.id(i).to_string())),
                None => Fail::Input("the hecke command needs Hecke parameters".into()),
            })?;
            cmd_hecke(cfg, &q, &params, module.as_deref(), inverse.as_deref())
        }
    }
}

fn cmd_verify(cfg: &RunConfig, q: &Arc<Quiver>, flavor: Flavor) -> CmdResult {
    let shapes: Vec<Arc<Shape>> = match &cfg.nu {
        Some(nu) => vec![shape_for(q, flavor, nu)?],
        None => {
            let m = cfg.rank.unwrap_or(2);
            guard(m)?;
            all_nus(q, flavor, m).into_iter().map(|nu| Shape::new(q.clone(), flavor, nu)).collect::<crate::Result<_>>()?
        }
    };
    let mut report = String::new();
    let fl = if flavor == Flavor::B { "B" } else { "A" };
    let (mut total, mut failed) = (0, 0);
    for sh in &shapes {
        let r = verify_relations(sh)?;
        total += r.checked;
        failed += r.failures.len();
        writeln!(report, "nu {} flavor {fl} rank {}: {} instances, {} failed", q.render_nu(sh.nu()), sh.rank(), r.checked, r.failures.len()).unwrap();
        for f in &r.failures {
            writeln!(report, "  FAIL {} {}", f.tag, f.instance).unwrap();
        }
    }
    writeln!(report, "total: {} dimension vectors, {total} instances, {failed} failed", shapes.len()).unwrap();
    Ok(Outcome { report, ok: failed == 0 })
}

fn cmd_verify_hecke(path: &Path) -> CmdResult {
    let h = HeckeModule::parse(&read(path)?)?;
    let r = h.verify();
    let mut report = format!("hecke module {} rank {} dim {}\n", h.params, h.rank(), h.dim());
    report.push_str(&r.to_string());
    Ok(Outcome { report, ok: r.passed() })
}

fn cmd_pbw(cfg: &RunConfig, q: &Arc<Quiver>, flavor: Flavor, word: Option<&str>, seq: Option<&str>) -> CmdResult {
    let nu = cfg.nu.as_deref().ok_or_else(|| Fail::Input("pbw needs --nu".into()))?;
    let sh = shape_for(q, flavor, nu)?;
    let m = sh.rank();
    let factor: usize = match flavor {
        Flavor::B => (1..=m).product::<usize>() << m,
        Flavor::A => (1..=m).product(),
    };
    let basis = sh.basis();
    let mut report = String::new();
    writeln!(report, "nu {} rank {m}", q.render_nu(sh.nu())).unwrap();
    writeln!(report, "sequences: {}", sh.seqs().len()).unwrap();
    writeln!(report, "group order: {}", sh.elems().len()).unwrap();
    writeln!(report, "basis size: {} (expected {})", basis.len(), sh.seqs().len() * factor).unwrap();
    let mut ok = basis.len() == sh.seqs().len() * factor;
    if let Some(w) = word {
        let s = seq.ok_or_else(|| Fail::Input("--word needs --seq".into()))?;
        let i = sh.seq_index(&parse_seq(q, s)?)?;
        let letters = w
            .split_whitespace()
            .map(|g| crate::fmod::parse_gen_name(g).ok_or_else(|| Fail::Input(format!("unknown generator '{g}'"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let x = SkewElement::idempotent(&sh, i).left_word(&letters)?;
        let p = PbwElement::to_pbw(&x)?;
        let back = p.from_pbw() == x;
        ok &= back;
        writeln!(report, "normal form of {w} 1_{}:", sh.render_seq(i)).unwrap();
        writeln!(report, "  {}", p.to_string().replace('\n', "\n  ")).unwrap();
        writeln!(report, "round trip: {}", if back { "ok" } else { "MISMATCH" }).unwrap();
    }
    Ok(Outcome { report, ok })
}

fn seq_shape(q: &Arc<Quiver>, flavor: Flavor, s: &Seq) -> std::result::Result<Arc<Shape>, Fail> {
    guard(s.len())?;
    let nu = match flavor {
        Flavor::B => q.theta_content(s),
        Flavor::A => q.plain_content(s),
    };
    Ok(Shape::new(q.clone(), flavor, nu)?)
}

fn cmd_gdim(q: &Arc<Quiver>, flavor: Flavor, left: &str, right: &str) -> CmdResult {
    let (a, b) = (parse_seq(q, left)?, parse_seq(q, right)?);
    let sh = seq_shape(q, flavor, &b)?;
    let (i, j) = (sh.seq_index(&a)?, sh.seq_index(&b)?);
    let (num, d) = sh.gdim_pair(i, j);
    let report = format!("gdim 1_{} R 1_{} = {num} / (1-v^2)^{d}\n", sh.render_seq(i), sh.render_seq(j));
    Ok(Outcome { report, ok: true })
}

fn cmd_character(cfg: &RunConfig, q: &Arc<Quiver>, seq: Option<&str>) -> CmdResult {
    let seqs: Vec<Seq> = match (seq, &cfg.nu) {
        (Some(s), _) => vec![parse_seq(q, s)?],
        (None, Some(nu)) => shape_for(q, Flavor::B, nu)?.seqs().to_vec(),
        (None, None) => return Err(Fail::Input("character needs --seq or --nu".into())),
    };
    let mut report = String::new();
    let mut ok = true;
    for j in &seqs {
        let sh = seq_shape(q, Flavor::B, j)?;
        let a = ch_projective(q, j)?;
        let b = ch_projective_pbw(&sh, j)?;
        let parity = a.parity_ok();
        let same = a == b;
        ok &= same && parity;
        writeln!(report, "ch(P{}) shuffle route:", q.render_theta_seq(j)).unwrap();
        report.push_str(&indent(&a.render(q)));
        writeln!(report, "ch(P{}) PBW route:", q.render_theta_seq(j)).unwrap();
        report.push_str(&indent(&b.render(q)));
        writeln!(report, "{} parity {}", if same { "MATCH" } else { "MISMATCH" }, if parity { "ok" } else { "VIOLATED" }).unwrap();
    }
    Ok(Outcome { report, ok })
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

fn cmd_shuffle(q: &Arc<Quiver>, left: &str, right: &str) -> CmdResult {
    let (a, b) = (parse_seq(q, left)?, parse_seq(q, right)?);
    guard(a.len() + b.len())?;
    let mut plain = Character::single(false, Seq(Vec::new()), LaurentV::one(), 0);
    for &x in &b.0 {
        plain = shuffle_plain(q, &plain, &Character::plain_generator(x))?;
    }
    let prod = shuffle(q, &ch_projective(q, &a)?, &plain)?;
    let mut ab = a.0.clone();
    ab.extend(&b.0);
    let direct = ch_projective(q, &Seq(ab))?;
    let same = prod == direct;
    let mut report = format!("ch(P{}) * ch(R{}):\n", q.render_theta_seq(&a), q.render_plain_seq(&b));
    report.push_str(&indent(&prod.render(q)));
    writeln!(report, "{} with ch(P of the concatenation)", if same { "MATCH" } else { "MISMATCH" }).unwrap();
    Ok(Outcome { report, ok: same })
}

fn cmd_crystal(cfg: &RunConfig, q: &Arc<Quiver>) -> CmdResult {
    let depth = cfg.depth.unwrap_or(1);
    guard(depth)?;
    let g = build_crystal(q.clone(), depth)?;
    let mut report = String::new();
    let counts: Vec<String> = (0..=depth).map(|r| g.nodes_at(r).len().to_string()).collect();
    writeln!(report, "depth {depth}: {} nodes ({} per rank), {} edges, {} E~ checks", g.nodes.len(), counts.join(" "), g.edges.len(), g.etilde_checks)
        .unwrap();
    report.push_str(&g.render());
    write_out(&cfg.out, &g.to_dot(), &mut report)?;
    Ok(Outcome { report, ok: true })
}

fn render_matrix(a: &Matrix) -> String {
    let rows: Vec<String> = (0..a.rows()).map(|r| a.row(r).iter().map(fmt_short).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

fn cmd_hecke(cfg: &RunConfig, q: &Arc<Quiver>, params: &HeckeParams, module: Option<&Path>, inverse: Option<&Path>) -> CmdResult {
    check_params(q, params)?;
    let mut report = format!("parameters {params}\n");
    if let Some(path) = inverse {
        let h = HeckeModule::parse(&read(path)?)?;
        if h.params != *params {
            return Err(Fail::Input(format!("module parameters {} differ from {params}", h.params)));
        }
        let inv = inverse_transport(&h, q.clone())?;
        let back = transport(&inv.module, params)? == h.conjugate(&inv.basis)?;
        writeln!(report, "recovered KLR module of dimension {} on nu {}", inv.module.dim(), q.render_nu(inv.module.shape().nu())).unwrap();
        report.push_str(&indent(&inv.module.character().render(q)));
        writeln!(report, "round trip: {}", if back { "ok" } else { "MISMATCH" }).unwrap();
        write_out(&cfg.out, &write_module(&inv.module), &mut report)?;
        return Ok(Outcome { report, ok: back });
    }
    if let Some(path) = module {
        let m = parse_module(&read(path)?, q.clone())?;
        let (ok, text) = transport_report(&m, params, q)?;
        report.push_str(&text);
        let h = transport(&m, params)?;
        write_out(&cfg.out, &h.to_text(), &mut report)?;
        return Ok(Outcome { report, ok });
    }
    let depth = cfg.depth.unwrap_or(1);
    guard(depth)?;
    let g = build_crystal(q.clone(), depth)?;
    let mut ok = true;
    for n in &g.nodes {
        writeln!(report, "node {} rank {} dim {}", n.id, n.rank, n.witness.dim()).unwrap();
        let (good, text) = transport_report(&n.witness, params, q)?;
        ok &= good;
        report.push_str(&indent(&text));
        if n.rank == 1 {
            let h = transport(&n.witness, params)?;
            writeln!(report, "  X1 = {}  T0 = {}", render_matrix(&h.x[0]), render_matrix(&h.t[0])).unwrap();
        }
    }
    if let HeckeParams::C { p, q0, q1 } = params {
        if q0 == q1 {
            let b = HeckeParams::B { p: p.clone(), q: q0.clone() };
            let same = g.nodes.iter().all(|n| match (transport(&n.witness, params), transport(&n.witness, &b)) {
                (Ok(x), Ok(y)) => x.x == y.x && x.t == y.t,
                _ => false,
            });
            ok &= same;
            writeln!(report, "{}", if same { "coincides with type B" } else { "DIFFERS from type B" }).unwrap();
        }
    }
    Ok(Outcome { report, ok })
}

/// Relations, intertwiners, E_i compatibility and round trip for one module.
fn transport_report(m: &GradedModule, params: &HeckeParams, q: &Arc<Quiver>) -> std::result::Result<(bool, String), Fail> {
    let mut s = String::new();
    let h = transport(m, params)?;
    let r = h.verify();
    let mut ok = r.passed();
    writeln!(s, "relations: {} checked, {} failed", r.checked, r.failures.len()).unwrap();
    for f in &r.failures {
        writeln!(s, "  FAIL {f}").unwrap();
    }
    let mut inter = Vec::new();
    for k in 0..h.rank() {
        match h.check_intertwiner(k) {
            Ok(Some(true)) => inter.push(format!("phi{k} ok")),
            Ok(Some(false)) => {
                ok = false;
                inter.push(format!("phi{k} FAIL"));
            }
            Ok(None) => inter.push(format!("phi{k} singular")),
            Err(_) => inter.push(format!("phi{k} undefined")),
        }
    }
    if !inter.is_empty() {
        writeln!(s, "intertwiners: {}", inter.join(", ")).unwrap();
    }
    if m.rank() >= 1 {
        let ei = check_ei_compat(m, params)?;
        let bad: Vec<&str> = ei.iter().filter(|e| !e.ok()).map(|e| q.id(e.vertex)).collect();
        ok &= bad.is_empty();
        writeln!(s, "E_i compatibility: {}", if bad.is_empty() { "ok".to_string() } else { format!("FAIL at {}", bad.join(",")) }).unwrap();
        let inv = inverse_transport(&h, q.clone())?;
        let back = transport(&inv.module, params)? == h.conjugate(&inv.basis)?;
        let chars = inv.module.character().dim_at_one() == m.character().dim_at_one() && same_ungraded(&inv.module, m);
        ok &= back && chars;
        writeln!(s, "inverse transport: {}", if back && chars { "ok" } else { "MISMATCH" }).unwrap();
    }
    Ok((ok, s))
}

/// Equal characters at v = 1.
fn same_ungraded(a: &GradedModule, b: &GradedModule) -> bool {
    a.shape().seqs().len() == b.shape().seqs().len() && (0..a.shape().seqs().len()).all(|k| a.block_dim(k) == b.block_dim(k))
}
