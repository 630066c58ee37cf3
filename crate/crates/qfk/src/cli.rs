//! Command-line interface: `gen`, `verify`, `smoothness`, `transform`, `export`.

use crate::analysis::{report, PropertyReport};
use crate::construct::{
    daubechies_tensor_bank, double_canonical_from_uv, general_bank, lift, six_multiple_bank, thm22_bank, FilterBank,
};
use crate::filters1d::{complex_symmetric_pair, daubechies, haar, interpolatory, u_filter};
use crate::io::{load_bank, read_pgm, save_bank, write_bundle, write_pgm};
use crate::lattice::{half_arg_product, rational_1d, Dilation, Filter1D};
use crate::scalar::{C64, CQ};
use crate::smoothness::{subdivision_sm, table1, transition_sm, Method};
use crate::transform::{analyze, frame_energy_check, synthesize};
use crate::{Error, DEFAULT_TOL};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_CONSTRUCTION: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;
pub const EXIT_DIMENSION: i32 = 6;

pub const TOLERANCE_ENV: &str = "QFK_TOLERANCE";

#[derive(Parser, Debug)]
#[command(name = "qfk", version, about = "Symmetric quincunx tight framelet filter banks")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a filter bank and write it as JSON.
    Gen(GenArgs),
    /// Check tightness, orders, symmetry and canonical pairs of a bank file.
    Verify(VerifyArgs),
    /// Smoothness exponents as CSV.
    Smoothness(SmoothArgs),
    /// Multilevel transform of a PGM image.
    Transform(TransformArgs),
    /// Write a bank's coefficients as CSV or a C header.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    A2d,
    Thm22,
    ComplexDc,
    Tensor,
    SixMultiple,
    General,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum DilationArg {
    M,
    N,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// Second order for `tensor`.
    #[arg(long)]
    m: Option<usize>,
    /// Low-pass for `six-multiple`: haar, interp<k> or ex42.
    #[arg(long)]
    a: Option<String>,
    #[arg(long, value_enum, default_value = "m")]
    dilation: DilationArg,
    #[arg(long, value_parser = parse_pair, default_value = "1,1")]
    g1: [i64; 2],
    #[arg(long, value_parser = parse_pair, default_value = "1,-1")]
    g2: [i64; 2],
    #[arg(long, value_parser = parse_pair, default_value = "0,1")]
    g3: [i64; 2],
    #[arg(long, value_parser = parse_pair, default_value = "1,0")]
    g4: [i64; 2],
    /// ξ numerators over |det M|.
    #[arg(long, value_parser = parse_pair, default_value = "1,1")]
    xi: [i64; 2],
    #[arg(short, long, default_value = "bank.json")]
    out: PathBuf,
    /// Embed the property report in the file.
    #[arg(long)]
    with_report: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    bank: PathBuf,
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum MethodArg {
    Spectrum,
    Subdivision,
    Both,
}

#[derive(Args, Debug)]
struct SmoothArgs {
    #[arg(long)]
    table1: bool,
    #[arg(long, default_value_t = 5)]
    nmax: usize,
    #[arg(long)]
    bank: Option<PathBuf>,
    /// Family member a^{2D}_{2n,2n} alongside a^I_{2n}.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "spectrum")]
    method: MethodArg,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[arg(long)]
    bank: PathBuf,
    #[arg(long)]
    image: PathBuf,
    #[arg(long, default_value_t = 1)]
    levels: usize,
    /// Output stem for `<stem>.json` and `<stem>.bin`.
    #[arg(short, long, default_value = "coeffs")]
    out: PathBuf,
    #[arg(long)]
    roundtrip: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum ExportFormat {
    Csv,
    CHeader,
}

#[derive(Args, Debug)]
struct ExportArgs {
    bank: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: ExportFormat,
    /// Identifier prefix in the C header.
    #[arg(long, default_value = "qfk_bank")]
    name: String,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<[i64; 2], String> {
    let v: Vec<&str> = s.split(',').collect();
    if v.len() != 2 {
        return Err(format!("expected two comma-separated integers, got {s:?}"));
    }
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok([p(v[0])?, p(v[1])?])
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) => EXIT_USAGE,
        Error::Parse(_) | Error::Io(_) => EXIT_PARSE,
        Error::BadDimensions(_) | Error::MetadataMismatch(_) | Error::DimensionMismatch(_) => EXIT_DIMENSION,
        _ => EXIT_CONSTRUCTION,
    }
}

/// Verification threshold from the environment.
pub fn tolerance_from_env() -> Result<f64, String> {
    match std::env::var(TOLERANCE_ENV) {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(format!("{TOLERANCE_ENV}={s:?} is not a positive number")),
        },
    }
}

#[derive(Debug)]
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let tol = match tolerance_from_env() {
        Ok(t) => t,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    let res = match cli.cmd {
        Command::Gen(a) => cmd_gen(&a, tol, out),
        Command::Verify(a) => cmd_verify(&a, tol, out),
        Command::Smoothness(a) => cmd_smoothness(&a, out),
        Command::Transform(a) => cmd_transform(&a, tol, out),
        Command::Export(a) => cmd_export(&a, out),
    };
    match res {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn need_n(n: Option<usize>, what: &str) -> Result<usize, Failure> {
    match n {
        Some(n) if n > 0 => Ok(n),
        Some(_) => Err(usage(format!("{what}: --n must be positive"))),
        None => Err(usage(format!("{what}: --n is required"))),
    }
}

fn six_multiple_lowpass(name: &str) -> Result<Filter1D<CQ>, Failure> {
    match name {
        "haar" => Ok(haar()),
        "ex42" => Ok(rational_1d(-2, &[-3, 5, 30, 30, 5, -3], 64)),
        s => match s.strip_prefix("interp").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if k > 0 => Ok(interpolatory(k)),
            _ => Err(usage(format!("unknown low-pass {s:?}; use haar, interp<k> or ex42"))),
        },
    }
}

fn build_bank(a: &GenArgs) -> Result<FilterBank<C64>, Failure> {
    let bank = match a.family {
        Family::A2d => {
            let n = need_n(a.n, "a2d")?;
            FilterBank {
                lowpass: lift(&u_filter(n, &[])).to_c64(),
                highpass: Vec::new(),
                dilation: Dilation::quincunx_m(),
                canonical_pairs: Vec::new(),
                family: "a2d".into(),
                params: [("n".to_string(), n.to_string())].into(),
            }
        }
        Family::Thm22 => thm22_bank(need_n(a.n, "thm22")?)?,
        Family::ComplexDc => {
            let n = need_n(a.n, "complex-dc")?;
            let (u, v) = complex_symmetric_pair(n)?;
            let mut b = double_canonical_from_uv(&u, &v)?;
            b.family = "complex-dc".into();
            b.params.insert("n".into(), n.to_string());
            b
        }
        Family::Tensor => {
            let n = need_n(a.n, "tensor")?;
            let m = need_n(a.m, "tensor (--m)")?;
            daubechies_tensor_bank(n, m)?
        }
        Family::SixMultiple => {
            let name = a.a.as_deref().ok_or_else(|| usage("six-multiple: --a is required"))?;
            let mut b = six_multiple_bank(&six_multiple_lowpass(name)?)?;
            b.params.insert("a".into(), name.into());
            b
        }
        Family::General => {
            let n = need_n(a.n, "general")?;
            let u = u_filter(n, &[]).to_c64();
            let d = daubechies(n)?;
            let v = half_arg_product(&d, &d, 1e-12)?;
            let m = if a.dilation == DilationArg::M { Dilation::quincunx_m() } else { Dilation::quincunx_n() };
            let mut b = general_bank(&u, &v, m, a.g1, a.g2, a.g3, a.g4, a.xi)?;
            b.params.insert("n".into(), n.to_string());
            b
        }
    };
    Ok(bank)
}

fn support_text(f: &crate::lattice::Filter2D<C64>) -> String {
    match f.support_max() {
        Some(hi) => {
            let lo = f.support_min();
            format!("[{},{}]x[{},{}]", lo[0], hi[0], lo[1], hi[1])
        }
        None => "empty".into(),
    }
}

fn cmd_gen(a: &GenArgs, _tol: f64, out: &mut dyn Write) -> CmdResult {
    let bank = build_bank(a)?;
    let rep = if bank.highpass.is_empty() { None } else { Some(report(&bank)?) };
    save_bank(&a.out, &bank, if a.with_report { rep.as_ref() } else { None })?;
    let _ = writeln!(out, "wrote {} ({} filters, family {})", a.out.display(), bank.len(), bank.family);
    for (i, f) in bank.filters().iter().enumerate() {
        let _ = writeln!(out, "  filter {i}: support {}", support_text(f));
    }
    if let Some(r) = rep {
        let _ = writeln!(out, "  sr {}  vmo {}  lpm {}", r.sr, vmo_text(&r), r.lpm);
    }
    Ok(EXIT_OK)
}

fn vmo_text(r: &PropertyReport) -> String {
    r.vmo_per_filter
        .iter()
        .map(|v| v.map_or("inf".to_string(), |k| k.to_string()))
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_verify(a: &VerifyArgs, tol: f64, out: &mut dyn Write) -> CmdResult {
    let bank = load_bank(&a.bank)?;
    if bank.highpass.is_empty() {
        let _ = writeln!(out, "bank has no high-pass filters: not tight");
        return Ok(EXIT_VERIFY);
    }
    let rep = report(&bank)?;
    let canon = bank.canonical_deviation()?;
    let tight_ok = rep.tight_residual <= tol;
    let canon_ok = canon <= tol;
    let _ = writeln!(out, "family           {}", bank.family);
    let _ = writeln!(out, "filters          {}", bank.len());
    let _ = writeln!(out, "tight residual   {:.3e} {}", rep.tight_residual, verdict(tight_ok));
    let _ = writeln!(out, "canonical pairs  {:.3e} {}", canon, verdict(canon_ok));
    let _ = writeln!(out, "sum rules        {}", rep.sr);
    let _ = writeln!(out, "vmo              {}", vmo_text(&rep));
    let _ = writeln!(out, "lpm              {}", rep.lpm);
    let _ = writeln!(out, "orthonormal res  {:.3e}", rep.orthonormal_residual);
    for (i, s) in rep.symmetry_verdicts.iter().enumerate() {
        let _ = writeln!(
            out,
            "symmetry {i:<7} {} about ({}, {}) {:?} {}",
            s.group,
            s.center[0],
            s.center[1],
            s.character,
            if s.pass { "yes" } else { "no" }
        );
    }
    if let Some(p) = &a.json {
        let v = serde_json::json!({
            "report": rep,
            "canonical_deviation": canon,
            "tolerance": tol,
            "pass": tight_ok && canon_ok,
        });
        std::fs::write(p, serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(e.to_string()))?)
            .map_err(Error::from)?;
    }
    Ok(if tight_ok && canon_ok { EXIT_OK } else { EXIT_VERIFY })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| format!("{x:.6}"))
}

fn cmd_smoothness(a: &SmoothArgs, out: &mut dyn Write) -> CmdResult {
    let sources = [a.table1, a.bank.is_some(), a.n.is_some()].iter().filter(|b| **b).count();
    if sources != 1 {
        return Err(usage("give exactly one of --table1, --bank, --n"));
    }
    let _ = writeln!(out, "n,sm_quincunx,sm_dyadic,method,delta");
    let method_name = match a.method {
        MethodArg::Spectrum => "spectrum",
        MethodArg::Subdivision => "subdivision",
        MethodArg::Both => "both",
    };
    if a.table1 || a.n.is_some() {
        let (lo, hi) = match a.n {
            Some(0) => return Err(usage("--n must be positive")),
            Some(n) => (n, n),
            None => (1, a.nmax),
        };
        if hi == 0 || hi > 8 {
            return Err(usage("--nmax must lie in 1..=8"));
        }
        let rows = |m: Method| -> Result<Vec<(f64, f64)>, Failure> {
            if a.table1 {
                Ok(table1(hi, m)?.into_iter().map(|r| (r.sm_2d, r.sm_1d)).collect())
            } else {
                let a2 = lift(&u_filter(hi, &[]));
                let a1 = interpolatory(hi);
                let (q, d) = match m {
                    Method::TransitionSpectrum => (
                        transition_sm(&a2, &Dilation::quincunx_m())?.sm2,
                        transition_sm(&a1, &Dilation::dyadic())?.sm2,
                    ),
                    Method::SubdivisionIteration => (
                        subdivision_sm(&a2, &Dilation::quincunx_m(), None)?.sm2,
                        subdivision_sm(&a1, &Dilation::dyadic(), None)?.sm2,
                    ),
                };
                Ok(vec![(q, d)])
            }
        };
        let spec = if a.method != MethodArg::Subdivision { Some(rows(Method::TransitionSpectrum)?) } else { None };
        let sub = if a.method != MethodArg::Spectrum { Some(rows(Method::SubdivisionIteration)?) } else { None };
        for (i, n) in (lo..=hi).enumerate() {
            let s = spec.as_ref().map(|r| r[i]);
            let d = sub.as_ref().map(|r| r[i]);
            let (q, y) = s.or(d).expect("one method ran");
            let delta = match (s, d) {
                (Some(s), Some(d)) => Some((s.0 - d.0).abs().max((s.1 - d.1).abs())),
                _ => None,
            };
            let _ = writeln!(out, "{n},{q:.6},{y:.6},{method_name},{}", fmt_opt(delta));
        }
        return Ok(EXIT_OK);
    }
    let path = a.bank.as_ref().expect("checked above");
    let bank = load_bank(path)?;
    let spec = if a.method != MethodArg::Subdivision {
        Some(transition_sm(&bank.lowpass, &bank.dilation)?.sm2)
    } else {
        None
    };
    let sub = if a.method != MethodArg::Spectrum {
        Some(subdivision_sm(&bank.lowpass, &bank.dilation, None)?.sm2)
    } else {
        None
    };
    let delta = match (spec, sub) {
        (Some(s), Some(d)) => Some((s - d).abs()),
        _ => None,
    };
    let n = bank.params.get("n").cloned().unwrap_or_default();
    let _ = writeln!(out, "{n},{:.6},,{method_name},{}", spec.or(sub).expect("one method ran"), fmt_opt(delta));
    Ok(EXIT_OK)
}

fn cmd_transform(a: &TransformArgs, tol: f64, out: &mut dyn Write) -> CmdResult {
    let bank = load_bank(&a.bank)?;
    let img = read_pgm(&std::fs::read(&a.image).map_err(Error::from)?)?;
    let pyr = analyze(&bank, &img, a.levels)?;
    let (json, bin) = write_bundle(&pyr, &a.out)?;
    let _ = writeln!(out, "wrote {} and {}", json.display(), bin.display());
    let _ = writeln!(out, "high-band max abs {:.3e}", pyr.high_band_max_abs());
    if !a.roundtrip {
        return Ok(EXIT_OK);
    }
    let back = synthesize(&bank, &pyr)?;
    let recon = recon_path(&a.out);
    std::fs::write(&recon, write_pgm(&back, 255)).map_err(Error::from)?;
    let scale = img.samples.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let err = back.max_abs_diff(&img);
    let energy = frame_energy_check(&bank, &img, a.levels)?;
    let _ = writeln!(out, "wrote {}", recon.display());
    let _ = writeln!(out, "max abs error {err:.3e}");
    let _ = writeln!(out, "energy residual {energy:.3e}");
    Ok(if err <= tol * scale && energy <= tol { EXIT_OK } else { EXIT_VERIFY })
}

fn recon_path(stem: &Path) -> PathBuf {
    let name = stem.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "coeffs".into());
    stem.with_file_name(format!("{name}_recon.pgm"))
}

fn c_ident(s: &str) -> Result<String, Failure> {
    let ok = !s.is_empty()
        && !s.starts_with(|c: char| c.is_ascii_digit())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(s.to_string())
    } else {
        Err(usage(format!("{s:?} is not a C identifier")))
    }
}

fn export_text(bank: &FilterBank<C64>, format: ExportFormat, name: &str) -> Result<String, Failure> {
    let mut s = String::new();
    match format {
        ExportFormat::Csv => {
            s.push_str("filter,k1,k2,re,im\n");
            for (i, f) in bank.filters().iter().enumerate() {
                for (k, v) in f.taps() {
                    s.push_str(&format!("{i},{},{},{:?},{:?}\n", k[0], k[1], v.re, v.im));
                }
            }
        }
        ExportFormat::CHeader => {
            let id = c_ident(name)?;
            let guard = id.to_uppercase();
            s.push_str(&format!("/* {} bank, {} filters */\n", bank.family, bank.len()));
            s.push_str(&format!("#ifndef {guard}_H\n#define {guard}_H\n\n"));
            s.push_str(&format!("#define {guard}_COUNT {}\n\n", bank.len()));
            for (i, f) in bank.filters().iter().enumerate() {
                let [r, c] = f.shape();
                let lo = f.support_min();
                s.push_str(&format!("/* filter {i}: re[i][j] at ({} + i, {} + j) */\n", lo[0], lo[1]));
                s.push_str(&format!("static const long {id}_{i}_min[2] = {{{}, {}}};\n", lo[0], lo[1]));
                for (part, g) in [("re", (|v: &C64| v.re) as fn(&C64) -> f64), ("im", |v: &C64| v.im)] {
                    s.push_str(&format!("static const double {id}_{i}_{part}[{r}][{c}] = {{\n"));
                    for row in 0..r {
                        let vals: Vec<String> = (0..c).map(|j| format!("{:?}", g(&f.data()[row * c + j]))).collect();
                        s.push_str(&format!("    {{{}}},\n", vals.join(", ")));
                    }
                    s.push_str("};\n");
                }
                s.push('\n');
            }
            s.push_str(&format!("#endif /* {guard}_H */\n"));
        }
    }
    Ok(s)
}

fn cmd_export(a: &ExportArgs, out: &mut dyn Write) -> CmdResult {
    let bank = load_bank(&a.bank)?;
    let text = export_text(&bank, a.format, &a.name)?;
    match &a.out {
        Some(p) => std::fs::write(p, text).map_err(Error::from)?,
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(EXIT_OK)
}
