use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};

use rbf_core::landscape::{filter_view_with, SweepPlan};
use rbf_core::spectrum::{estimate_spectrum_dft_modes, BiasReport};
use rbf_core::verify::{verification_table, VALIDATION_TOL};
use rbf_core::{
    arrows, bias_classical_2d, bias_classical_alias, bias_rbf_2d, bias_rbf_general, bias_sin2, chi_tilde_closed,
    direct_bias, direct_bias_2d, format_number, sample_landscape, sample_landscape_2d, to_csv, to_json, Builtin,
    Builtin1D, CsvRow, FilterMode, FourierSpectrum, GridSize, PrototypeParams, RelativeFrequency, Spectrum2D,
};

use crate::args::*;
use crate::error::{CliError, EXIT_VALIDATION};
use crate::parallel::ordered_map;

/// What a command produced, and the exit code to finish with.
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, code: 0 }
    }
}

pub fn run(command: &Command, format: Format, threads: usize) -> Result<Output, CliError> {
    match command {
        Command::Chi(a) => chi(a, format).map(Into::into),
        Command::Arrows(a) => arrows_cmd(a, format).map(Into::into),
        Command::Bias(a) => bias(a, format).map(Into::into),
        Command::Sweep(a) => sweep(a, format, threads).map(Into::into),
        Command::Landscape(a) => {
            let rows = sample_landscape(grid(a.p)?, a.ymin, a.ymax, a.points)?;
            Ok(rows_out(&rows, format).into())
        }
        Command::Landscape2d(a) => {
            let rows = sample_landscape_2d(grid(a.p)?, a.range, a.points)?;
            Ok(rows_out(&rows, format).into())
        }
        Command::Filter(a) => filter(a, format).map(Into::into),
        Command::SpectrumEstimate(a) => estimate(a, format).map(Into::into),
        Command::Validate => validate(format),
    }
}

fn grid(p: usize) -> Result<GridSize, CliError> {
    Ok(GridSize::new(p)?)
}

fn freq(y: f64) -> Result<RelativeFrequency, CliError> {
    Ok(RelativeFrequency::new(y)?)
}

fn rows_out<R: CsvRow>(rows: &[R], format: Format) -> String {
    match format {
        Format::Csv => to_csv(rows),
        Format::Json => to_json(rows),
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

// JSON numbers with negative zero folded into zero, matching the CSV.
fn num(x: f64) -> Value {
    json!(if x == 0.0 { 0.0 } else { x })
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

fn builtin(f: &FnArgs) -> Result<Builtin, CliError> {
    let name = f.function.as_deref().ok_or_else(|| CliError::usage("missing --fn"))?;
    if name.contains('(') {
        if f.k.is_some() || f.n.is_some() {
            return Err(CliError::usage("give the parameter either inline or with --k/--n, not both"));
        }
        return Ok(name.parse()?);
    }
    Ok(Builtin::lookup(name, f.k, f.n)?)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))
}

fn chi(a: &GridAt, format: Format) -> Result<String, CliError> {
    let v = chi_tilde_closed(grid(a.p)?, freq(a.y)?);
    Ok(match format {
        Format::Csv => format!("{},{}\n", format_number(v.value.re), format_number(v.value.im)),
        Format::Json => json_text(&json!({
            "P": a.p,
            "y": num(a.y),
            "re": num(v.value.re),
            "im": num(v.value.im),
            "branch": format!("{:?}", v.branch),
        })),
    })
}

fn arrows_cmd(a: &GridAt, format: Format) -> Result<String, CliError> {
    let d = arrows(grid(a.p)?, freq(a.y)?);
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("j,re,im\n");
            for (j, z) in d.arrows.iter().enumerate() {
                let _ = writeln!(s, "{j},{},{}", format_number(z.re), format_number(z.im));
            }
            let _ = writeln!(s, "centroid,{},{}", format_number(d.centroid.re), format_number(d.centroid.im));
            s
        }
        Format::Json => json_text(&json!({
            "P": a.p,
            "y": num(a.y),
            "arrows": d.arrows.iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
            "centroid": complex_json(d.centroid),
        })),
    })
}

struct BiasLine {
    p: usize,
    rbf: Complex64,
    classical: Option<Complex64>,
    direct: Option<f64>,
    coverage_warning: bool,
}

const BIAS_HEADER: &str = "P,rbf_re,rbf_im,classical_re,classical_im,direct,max_discrepancy,coverage_warning";

fn default_lmax(max_mode: Option<u64>, p: usize) -> u64 {
    max_mode.map_or(1, |m| m.div_ceil(p as u64).max(1))
}

fn bias(a: &BiasArgs, format: Format) -> Result<String, CliError> {
    let p = grid(a.p)?;
    let line = if let Some(path) = &a.spectrum {
        let spec = FourierSpectrum::from_json(&read_file(path)?)?;
        let l_max = a.lmax.unwrap_or_else(|| default_lmax(spec.max_abs_mode(), a.p));
        let alias = bias_classical_alias(&spec, p, l_max)?;
        BiasLine {
            p: a.p,
            rbf: bias_rbf_general(&spec, p)?,
            classical: Some(alias.value),
            direct: None,
            coverage_warning: alias.coverage_warning,
        }
    } else if let Some(path) = &a.spectrum2d {
        let spec = Spectrum2D::from_json(&read_file(path)?)?;
        bias_2d(&spec, a, None)?
    } else {
        match builtin(&a.f)? {
            Builtin::TwoD(f) => bias_2d(&f.spectrum(), a, Some(direct_bias_2d(&f, p)?))?,
            Builtin::OneD(f) => bias_1d(&f, a)?,
        }
    };
    let report = BiasReport::new(line.rbf, line.classical.unwrap_or(line.rbf), line.direct);
    Ok(match format {
        Format::Csv => {
            let opt = |v: Option<f64>| v.map(format_number).unwrap_or_default();
            format!(
                "{BIAS_HEADER}\n{},{},{},{},{},{},{},{}\n",
                line.p,
                format_number(line.rbf.re),
                format_number(line.rbf.im),
                opt(line.classical.map(|c| c.re)),
                opt(line.classical.map(|c| c.im)),
                opt(line.direct),
                format_number(report.max_pairwise_discrepancy),
                line.coverage_warning,
            )
        }
        Format::Json => json_text(&json!({
            "P": line.p,
            "rbf": complex_json(line.rbf),
            "classical": line.classical.map(complex_json),
            "direct": line.direct.map(num),
            "max_discrepancy": num(report.max_pairwise_discrepancy),
            "coverage_warning": line.coverage_warning,
        })),
    })
}

fn bias_1d(f: &Builtin1D, a: &BiasArgs) -> Result<BiasLine, CliError> {
    let p = grid(a.p)?;
    let direct = Some(direct_bias(f, p)?);
    match (f, f.spectrum()) {
        (_, Some(spec)) => {
            let l_max = a.lmax.unwrap_or_else(|| default_lmax(spec.max_abs_mode(), a.p));
            let alias = bias_classical_alias(&spec, p, l_max)?;
            Ok(BiasLine {
                p: a.p,
                rbf: bias_rbf_general(&spec, p)?,
                classical: Some(alias.value),
                direct,
                coverage_warning: alias.coverage_warning,
            })
        }
        (Builtin1D::Sin2 { k }, None) => Ok(BiasLine {
            p: a.p,
            rbf: Complex64::new(bias_sin2(p, PrototypeParams::from_k(*k)?)?, 0.0),
            classical: None,
            direct,
            coverage_warning: false,
        }),
        (other, None) => Err(CliError::usage(format!("no spectrum available for {other}"))),
    }
}

fn bias_2d(spec: &Spectrum2D, a: &BiasArgs, direct: Option<f64>) -> Result<BiasLine, CliError> {
    let p = grid(a.p)?;
    let l_max = a.lmax.unwrap_or_else(|| default_lmax(spec.max_abs_mode(), a.p));
    let alias = bias_classical_2d(spec, p, l_max)?;
    Ok(BiasLine {
        p: a.p,
        rbf: bias_rbf_2d(spec, p)?,
        classical: Some(alias.value),
        direct,
        coverage_warning: alias.coverage_warning,
    })
}

fn sweep(a: &SweepArgs, format: Format, threads: usize) -> Result<String, CliError> {
    let f = builtin(&a.f)?.one_d()?;
    if a.pmin < 2 || a.pmin > a.pmax {
        return Err(CliError::usage(format!("need 2 <= pmin <= pmax, got {}..{}", a.pmin, a.pmax)));
    }
    let plan = SweepPlan::for_builtin(&f)?;
    let ps: Vec<usize> = (a.pmin..=a.pmax).collect();
    let rows = ordered_map(&ps, threads, |&p| plan.row(&f, GridSize::new(p)?))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rows_out(&rows, format))
}

fn filter(a: &FilterArgs, format: Format) -> Result<String, CliError> {
    let spec = match &a.spectrum {
        Some(path) => FourierSpectrum::from_json(&read_file(path)?)?,
        None => {
            let f = builtin(&a.f)?.one_d()?;
            f.spectrum().ok_or_else(|| CliError::usage(format!("no finite spectrum for {f}")))?
        }
    };
    let mode = if a.diagnostic { FilterMode::Diagnostic } else { FilterMode::Indicator };
    let rows = filter_view_with(&spec, grid(a.p)?, a.krange, mode)?;
    Ok(rows_out(&rows, format))
}

fn estimate(a: &EstimateArgs, format: Format) -> Result<String, CliError> {
    let f = builtin(&a.f)?.one_d()?;
    let n = grid(a.samples)?;
    let k_max = a.kmax.unwrap_or((a.samples / 2).saturating_sub(1) as u64);
    let spec = estimate_spectrum_dft_modes(&f, n, k_max, a.drop_tol)?;
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("k,re,im\n");
            for (k, c) in spec.modes() {
                let _ = writeln!(s, "{k},{},{}", format_number(c.re), format_number(c.im));
            }
            s
        }
        Format::Json => {
            let mut s = spec.to_json();
            s.push('\n');
            s
        }
    })
}

fn validate(format: Format) -> Result<Output, CliError> {
    let table = verification_table()?;
    let ok = table.iter().all(|c| c.passes(VALIDATION_TOL));
    let text = match format {
        Format::Csv => {
            let mut s = String::from("case,P,method,value,max_diff\n");
            for c in &table {
                for v in &c.values {
                    let _ = writeln!(s, "{},{},{},{},{}", c.name, c.p, v.method, format_number(v.value), format_number(c.max_diff));
                }
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&table).expect("table serializes");
            s.push('\n');
            s
        }
    };
    Ok(Output { text, code: if ok { 0 } else { EXIT_VALIDATION } })
}
