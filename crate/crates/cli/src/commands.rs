use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anglat_core::angsum::{self, SumSpec, TruncationPolicy};
use anglat_core::contour::{self, ContourPolyline, FieldKind, GridSpec};
use anglat_core::delta3;
use anglat_core::specfun;
use anglat_core::zeroscan::{self, Family};
use anglat_core::{Complex64, Error};
use serde::Serialize;

use crate::{ContoursArgs, Delta3Args, EvalArgs, EvalFamily, FieldChoice, HistArgs, PolicyArgs, Table1Args, ZerosArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
    Io(String),
    /// A check ran and did not pass.
    Failed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Failed(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Numeric(Error::InvalidParameter(_)) => 2,
            _ => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numeric(e)
    }
}

pub type CliResult = Result<ExitCode, CliError>;

pub fn policy(a: &PolicyArgs) -> Result<TruncationPolicy, Error> {
    let base = TruncationPolicy::default();
    TruncationPolicy::new(a.p_cap, !a.fixed_p, a.tol, base.bessel_floor)
}

#[derive(Serialize)]
struct C {
    re: f64,
    im: f64,
}

impl From<Complex64> for C {
    fn from(z: Complex64) -> Self {
        C { re: z.re, im: z.im }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match out {
        Some(p) => fs::write(p, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(body.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write output: {e}")))
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serialises")
}

#[derive(Serialize)]
struct EvalOut {
    family: String,
    s: C,
    value: C,
    error_estimate: f64,
    p_used: usize,
    near_pole: bool,
    elapsed_ms: f64,
}

pub fn eval(a: &EvalArgs, pol: &TruncationPolicy) -> CliResult {
    let start = Instant::now();
    let s = a.s;
    let direct = |v: Complex64| angsum::SumValue {
        value: v,
        error_estimate: 0.0,
        p_used: 0,
        near_pole: false,
    };
    let (label, v) = match a.family {
        EvalFamily::C01 => ("C(0,1)".to_string(), angsum::c01_with(s, pol, None)?),
        EvalFamily::C2n1 => (format!("C({},1)", 2 * a.n), angsum::c2n1_with(a.n, s, pol, None)?),
        EvalFamily::C14 => (format!("C(1,{})", 4 * a.m), angsum::c14m_with(a.m, s, pol, None)?),
        EvalFamily::Cos => {
            let spec = SumSpec::CosPow { n: a.n, m: a.m };
            // C(1,4m) has its own route past the tabulated systems
            let v = if a.n == 1 && a.m % 4 == 0 && a.m > 0 {
                angsum::c14m_with(a.m / 4, s, pol, None)?
            } else {
                angsum::system_sum_with(spec, s, pol, None)?
            };
            (spec.to_string(), v)
        }
        EvalFamily::Sin => {
            let spec = SumSpec::SinPow { n: a.n, m: a.m };
            (spec.to_string(), angsum::system_sum_with(spec, s, pol, None)?)
        }
        EvalFamily::Mixed => {
            let spec = SumSpec::MixedMoment { a: a.a, b: a.b };
            (spec.to_string(), angsum::system_sum_with(spec, s, pol, None)?)
        }
        EvalFamily::Zeta => ("zeta".to_string(), direct(specfun::zeta(s)?)),
        EvalFamily::Beta => ("beta4".to_string(), direct(specfun::beta_catalan(s))),
    };
    let out = EvalOut {
        family: label,
        s: s.into(),
        value: v.value.into(),
        error_estimate: v.error_estimate,
        p_used: v.p_used,
        near_pole: v.near_pole,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    emit(None, &json(&out))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Delta3Out {
    m: u32,
    s: C,
    value: C,
    /// `value = mantissa · exp(log_scale)`, usable when `value` underflows.
    mantissa: C,
    log_scale: f64,
    near_pole: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    c_tilde: Option<C>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_tilde: Option<C>,
    #[serde(skip_serializing_if = "Option::is_none")]
    near_cut: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
}

pub fn delta3(a: &Delta3Args, pol: &TruncationPolicy) -> CliResult {
    let d = delta3::delta3(a.m, a.s, pol)?;
    let parts = if a.parts {
        Some(delta3::delta3_tilde_parts(a.m, a.s, pol)?)
    } else {
        None
    };
    let residual = if a.residual {
        Some(delta3::functional_residual(a.m, a.s, pol)?)
    } else {
        None
    };
    let out = Delta3Out {
        m: a.m,
        s: a.s.into(),
        value: d.value.into(),
        mantissa: d.mantissa.into(),
        log_scale: d.log_scale,
        near_pole: d.near_pole,
        c_tilde: parts.map(|p| p.c.into()),
        s_tilde: parts.map(|p| p.s.into()),
        near_cut: parts.map(|p| p.near_cut),
        residual,
    };
    emit(None, &json(&out))?;
    Ok(ExitCode::SUCCESS)
}

/// `c14` takes its order from `--m`; every other name is parsed as is.
fn family(name: &str, m: Option<u32>) -> Result<Family, CliError> {
    let lower = name.trim().to_ascii_lowercase();
    if lower == "c14" {
        return Ok(Family::c14m(m.unwrap_or(1))?);
    }
    let f: Family = lower.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?;
    if let (Family::C14m(k), Some(m)) = (f, m) {
        if k != m {
            return Err(CliError::Usage(format!("--family {name} contradicts --m {m}")));
        }
    }
    Ok(f)
}

pub fn zeros(a: &ZerosArgs, pol: &TruncationPolicy) -> CliResult {
    let fam = family(&a.family, a.m)?;
    let zs = zeroscan::scan(fam, (a.tmin, a.tmax), a.step, pol)?;
    let mut text = String::from("family,t,t_lo,t_hi,refined_tol\n");
    for z in &zs {
        writeln!(text, "{},{:.12},{:.12},{:.12},{:e}", z.family, z.t, z.bracket.0, z.bracket.1, z.refined_tol).unwrap();
    }
    emit(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn table1(a: &Table1Args, pol: &TruncationPolicy) -> CliResult {
    let fams = zeroscan::table_families();
    let (table, _) = zeroscan::count_table(a.tmax, a.width, &fams, a.step, pol)?;
    let mut text = String::new();
    if a.csv {
        text.push_str("t_start,t_end,cumulative,n_zeta,n_beta4,n_c14,sum,n_c18,n_c112,pred_zeta,pred_beta4,pred_c14\n");
        for r in &table.rows {
            let sum = r.sum_zeta_beta_c14(&table).expect("table has the three columns");
            writeln!(
                text,
                "{},{},{},{},{},{},{},{},{},{:.3},{:.3},{:.3}",
                r.t_start,
                r.t_end,
                r.cumulative,
                r.counts[0],
                r.counts[1],
                r.counts[2],
                sum,
                r.counts[3],
                r.counts[4],
                r.predicted[0],
                r.predicted[1],
                r.predicted[2]
            )
            .unwrap();
        }
    } else {
        writeln!(text, "{:>10} {:>5} {:>5} {:>6} {:>5} {:>6} {:>7}", "t", "zeta", "L-4", "C14", "sum", "C18", "C112").unwrap();
        for r in &table.rows {
            let sum = r.sum_zeta_beta_c14(&table).expect("table has the three columns");
            let label = format!("{}-{}", r.t_start, r.t_end);
            writeln!(
                text,
                "{label:>10} {:>5} {:>5} {:>6} {:>5} {:>6} {:>7}",
                r.counts[0], r.counts[1], r.counts[2], sum, r.counts[3], r.counts[4]
            )
            .unwrap();
            if r.cumulative {
                let p: Vec<i64> = r.predicted[..3].iter().map(|x| x.round() as i64).collect();
                writeln!(
                    text,
                    "{:>10} {:>5} {:>5} {:>6} {:>5}",
                    "predicted",
                    p[0],
                    p[1],
                    p[2],
                    p[0] + p[1] + p[2]
                )
                .unwrap();
            }
        }
    }
    emit(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

pub fn hist(a: &HistArgs, pol: &TruncationPolicy) -> CliResult {
    let fam = family(&a.family, a.m)?;
    let zs = zeroscan::scan(fam, (0.0, a.tmax), a.step, pol)?;
    let h = zeroscan::spacing_stats_with(&zs, a.bin)?;
    let mut text = String::from("bin,density,wigner\n");
    for (i, (d, w)) in h.densities.iter().zip(&h.wigner).enumerate() {
        let centre = 0.5 * (h.bin_edges[i] + h.bin_edges[i + 1]);
        writeln!(text, "{centre:.6},{d:.6},{w:.6}").unwrap();
    }
    emit(a.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ContourOut {
    field: &'static str,
    m: u32,
    polylines: Vec<Vec<[f64; 2]>>,
    closed: Vec<bool>,
}

fn field_name(f: FieldKind) -> &'static str {
    match f {
        FieldKind::ReDelta3 => "re",
        FieldKind::ImDelta3 => "im",
        FieldKind::PrefactorRe => "prefactor_re",
        FieldKind::PrefactorIm => "prefactor_im",
    }
}

pub fn contours(a: &ContoursArgs, pol: &TruncationPolicy) -> CliResult {
    let grid = GridSpec::new(a.sigma, a.t, a.nx, a.nt)?;
    let sampled = if a.prefactor {
        contour::sample_prefactor_grid(grid)?
    } else {
        contour::sample_grid(a.m, grid, pol)?
    };
    let (re, im) = if a.prefactor {
        (FieldKind::PrefactorRe, FieldKind::PrefactorIm)
    } else {
        (FieldKind::ReDelta3, FieldKind::ImDelta3)
    };
    let fields = match a.field {
        FieldChoice::Re => vec![re],
        FieldChoice::Im => vec![im],
        FieldChoice::Both => vec![re, im],
    };
    let mut out = Vec::new();
    for f in fields {
        let lines: Vec<ContourPolyline> = contour::extract_null(&sampled, f, pol)?;
        out.push(ContourOut {
            field: field_name(f),
            m: sampled.m,
            polylines: lines.iter().map(|l| l.vertices.iter().map(|&(x, y)| [x, y]).collect()).collect(),
            closed: lines.iter().map(|l| l.closed).collect(),
        });
    }
    emit(a.out.as_deref(), &serde_json::to_string(&out).expect("plain data serialises"))?;
    Ok(ExitCode::SUCCESS)
}
