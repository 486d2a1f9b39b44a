use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use tbtrellis::convcode::Encoder;
use tbtrellis::oracle::{self, assert_equal, PathSet};
use tbtrellis::reduction::{
    plan_backward_reduction, plan_forward_reduction, plan_from_shift, reduce_code_trellis,
    reduce_error_trellis, Forced, ReducedCodeTrellis, ReducedErrorTrellis, Shift, ShiftPlan,
    SyndromeAlignment,
};
use tbtrellis::trellis::{
    build_code_trellis, build_error_trellis, enumerate_paths, export_dot, extract_subtrellis,
    labels_of, ExportOptions, Highlight, TrellisPath,
};
use tbtrellis::{Error, PolyMatrix, SymbolSequence, TailBitingTrellis};

use crate::error::CliError;
use crate::{ExportArgs, ReduceArgs, ShiftArgs, Target, TrellisArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
}

type CmdResult = Result<Status, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_file<T>(path: &Path) -> Result<T, CliError>
where
    T: std::str::FromStr<Err = Error>,
{
    read(path)?.parse().map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `text` to `path`, or to `out` when `path` is `-`.
fn emit(path: &Path, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path.as_os_str() == "-" {
        out.write_all(text.as_bytes()).map_err(io_err)
    } else {
        fs::write(path, text).map_err(io_err)
    }
}

fn print(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn indented(m: &PolyMatrix) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn check(path: &Path, out: &mut dyn Write) -> CmdResult {
    let h: PolyMatrix = parse_file(path)?;
    let report = h.canonicity();
    let degrees: Vec<String> = (0..h.rows())
        .map(|i| {
            h.row(i)
                .iter()
                .filter_map(|p| p.degree().finite())
                .max()
                .map_or("-inf".to_string(), |d| d.to_string())
        })
        .collect();
    let nu = h
        .overall_constraint_length()
        .map_or("undefined".to_string(), |v| v.to_string());
    let mut s = String::new();
    writeln!(s, "m={}, n={}", h.rows(), h.cols()).unwrap();
    writeln!(s, "row degrees: {}", degrees.join(", ")).unwrap();
    writeln!(s, "M={}, ν={nu}, {}", h.memory_length(), report.diagnostic()).unwrap();
    print(out, &s)?;
    Ok(Status::Ok)
}

fn build(h: &PolyMatrix, target: &Target) -> Result<TailBitingTrellis, CliError> {
    match (&target.error, target.code) {
        (Some(zpath), _) => {
            let z: SymbolSequence = parse_file(zpath)?;
            Ok(build_error_trellis(h, &z)?)
        }
        (None, Some(n)) => Ok(build_code_trellis(h, n)?),
        (None, None) => Err(CliError::Usage("either --error or --code is required".into())),
    }
}

fn summary(t: &TailBitingTrellis) -> String {
    let mut s = String::new();
    let kind = match t.kind() {
        tbtrellis::trellis::TrellisKind::Code => "code",
        tbtrellis::trellis::TrellisKind::Error => "error",
    };
    writeln!(s, "{kind} trellis: N={}, {} states/section", t.len(), t.num_states()).unwrap();
    let counts: Vec<String> = (1..=t.len()).map(|k| t.branches(k).len().to_string()).collect();
    writeln!(s, "branches/section: {}", counts.join(" ")).unwrap();
    if let (Some(sigma), Some(zeta)) = (t.sigma_fin(), t.syndrome()) {
        writeln!(s, "σ_fin={sigma}").unwrap();
        writeln!(s, "ζ={zeta}").unwrap();
    }
    s
}

fn list_paths(s: &mut String, paths: &[TrellisPath]) {
    for p in paths {
        writeln!(s, "  {}", p.labels).unwrap();
    }
}

fn export(
    t: &TailBitingTrellis,
    args: &ExportArgs,
    highlight: Highlight,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if let Some(path) = &args.export {
        let dot = export_dot(
            t,
            &ExportOptions {
                highlight,
                planar_tail: args.planar,
            },
        );
        emit(path, &dot, out)?;
    }
    Ok(())
}

pub fn trellis(args: &TrellisArgs, out: &mut dyn Write) -> CmdResult {
    let m: PolyMatrix = parse_file(&args.matrix)?;
    let t = build(&m, &args.target)?;
    let mut s = summary(&t);
    let mut highlight = Highlight::None;
    if let Some(label) = &args.export.highlight {
        let state = t.parse_state(label)?;
        let paths = extract_subtrellis(&t, state)?;
        writeln!(s, "subtrellis {}: {} paths", t.format_state(state), paths.len()).unwrap();
        list_paths(&mut s, &paths);
        highlight = Highlight::Paths(paths);
    }
    print(out, &s)?;
    export(&t, &args.export, highlight, out)?;
    Ok(Status::Ok)
}

/// Parses `2:2,3:2` (1-based column, shift) into per-column amounts.
fn parse_backward(spec: &str, cols: usize) -> Result<Vec<u32>, CliError> {
    let bad = |msg: String| CliError::Usage(format!("--backward {spec}: {msg}"));
    let mut amounts = vec![0; cols];
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (col, l) = item
            .split_once(':')
            .ok_or_else(|| bad(format!("expected COL:L, got `{item}`")))?;
        let j: usize = col.trim().parse().map_err(|_| bad(format!("bad column `{col}`")))?;
        let l: u32 = l.trim().parse().map_err(|_| bad(format!("bad amount `{l}`")))?;
        if j == 0 || j > cols {
            return Err(bad(format!("column {j} out of range 1..={cols}")));
        }
        amounts[j - 1] = l;
    }
    Ok(amounts)
}

fn describe_plan(s: &mut String, plan: &ShiftPlan, name: &str) {
    writeln!(s, "plan: {}", plan.direction()).unwrap();
    s.push_str(&plan.shift.to_string());
    if let Some(delayed) = &plan.delayed {
        writeln!(s, "{name}':").unwrap();
        s.push_str(&indented(delayed));
        let delays: Vec<String> = plan.row_delays.iter().map(u32::to_string).collect();
        writeln!(
            s,
            "row delays: {}, row operations: {}",
            delays.join(", "),
            plan.row_operations
        )
        .unwrap();
    }
    writeln!(s, "{name}~:").unwrap();
    s.push_str(&indented(&plan.reduced));
    let (before, after) = (plan.source_constraint_length(), plan.reduced_constraint_length());
    writeln!(s, "ν {before}→{after} ({} → {} states)", 1u64 << before, 1u64 << after).unwrap();
}

pub fn reduce(args: &ReduceArgs, out: &mut dyn Write) -> CmdResult {
    let m: PolyMatrix = parse_file(&args.matrix)?;
    let (text, status, plan_text) = match (&args.target.error, args.target.code) {
        (Some(zpath), _) => {
            let z: SymbolSequence = parse_file(zpath)?;
            let plan = match (&args.choice.backward, &args.choice.plan) {
                (Some(spec), _) => plan_backward_reduction(&m, &parse_backward(spec, m.cols())?)?,
                (None, Some(file)) => plan_from_shift(&m, &parse_file::<Shift>(file)?)?,
                (None, None) => plan_forward_reduction(&m)?,
            };
            let r = reduce_error_trellis(&m, &z, &plan)?;
            let (text, status) = report_error_reduction(&r, &z, &m, args.verify)?;
            if args.export.export.is_some() {
                let highlight = match &args.export.highlight {
                    Some(label) => {
                        Highlight::Paths(r.embedded_paths(r.original.parse_state(label)?)?)
                    }
                    None => Highlight::None,
                };
                print(out, &text)?;
                export(&r.reduced, &args.export, highlight, out)?;
                (String::new(), status, plan.shift.to_string())
            } else {
                (text, status, plan.shift.to_string())
            }
        }
        (None, Some(n)) => {
            if args.choice.backward.is_some() || args.choice.plan.is_some() {
                return Err(CliError::Usage(
                    "code-trellis reduction chooses its own plan; drop --backward/--plan".into(),
                ));
            }
            let r = reduce_code_trellis(&m, n)?;
            let (text, status) = report_code_reduction(&r, &m, args.verify)?;
            let highlight = match &args.export.highlight {
                Some(label) => Highlight::Paths(r.embedded_paths(r.original.parse_state(label)?)?),
                None => Highlight::None,
            };
            print(out, &text)?;
            export(&r.reduced, &args.export, highlight, out)?;
            (String::new(), status, r.plan.shift.to_string())
        }
        (None, None) => return Err(CliError::Usage("either --error or --code is required".into())),
    };
    print(out, &text)?;
    if let Some(path) = &args.plan_out {
        emit(path, &plan_text, out)?;
    }
    Ok(status)
}

fn forced_text(column: usize, section: usize, value: Option<bool>) -> String {
    let v = value.map_or("*", |b| if b { "1" } else { "0" });
    format!("column {} section {section} = {v}", column + 1)
}

fn report_error_reduction(
    r: &ReducedErrorTrellis,
    z: &SymbolSequence,
    h: &PolyMatrix,
    verify: bool,
) -> Result<(String, Status), CliError> {
    let mut s = String::new();
    describe_plan(&mut s, &r.plan, "H");
    writeln!(s, "z~={}", r.shifted_input).unwrap();
    let sigma = r.reduced.sigma_fin().expect("error trellis");
    writeln!(s, "σ~_fin={sigma}").unwrap();
    let zeta = r.reduced.syndrome().expect("error trellis");
    let relation = match r.alignment {
        SyndromeAlignment::Identical => "identical to the original",
        SyndromeAlignment::RowDelayed => "original rotated by the row delays",
        SyndromeAlignment::Transformed => "row operations applied, not compared",
    };
    writeln!(s, "ζ~={zeta} ({relation})").unwrap();

    let mut status = Status::Ok;
    if let Some(emb) = r.embedding() {
        writeln!(s, "state map:").unwrap();
        for st in r.original.states(0) {
            let label = r.original.format_state(st);
            let image = match emb.map_state(st) {
                Ok(t) => r.reduced.format_state(t),
                Err(Error::IndeterminateState(_)) => "indeterminate".into(),
                Err(Error::ContradictoryState(_)) => {
                    writeln!(s, "  {label} -> unreachable").unwrap();
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let segments: Vec<String> = emb
                .admissible_segments(st)?
                .iter()
                .map(|a| {
                    let v = match a.value {
                        Forced::Bit(b) => Some(b),
                        Forced::Free => None,
                    };
                    forced_text(a.column, a.section, v)
                })
                .collect();
            writeln!(s, "  {label} -> {image}  admissible: {}", segments.join(", ")).unwrap();
        }
    } else {
        writeln!(s, "state map: not available for backward plans").unwrap();
    }

    if verify {
        let ok = if r.embedding().is_some() {
            let by_state = oracle::coset_paths_by_state(h, z)?;
            let total = r.original.num_states();
            let mut passed = 0;
            for st in r.original.states(0) {
                let want = by_state.get(&st).cloned().unwrap_or_default();
                let got = match r.restored_paths(st) {
                    Ok(got) => got,
                    Err(Error::ContradictoryState(_)) => PathSet::new(),
                    Err(e) => return Err(e.into()),
                };
                let result = assert_equal(&got, &want);
                let detail = match &result {
                    Ok(()) => format!("{} paths", want.len()),
                    Err(m) => m.to_string(),
                };
                writeln!(
                    s,
                    "subtrellis {}: {} ({detail})",
                    r.original.format_state(st),
                    pass(result.is_ok())
                )
                .unwrap();
                passed += result.is_ok() as u32;
            }
            if passed == total {
                writeln!(s, "all {total} subtrellises embedded: pass").unwrap();
            } else {
                writeln!(s, "{passed} of {total} subtrellises embedded: FAIL").unwrap();
            }
            passed == total
        } else {
            let want = oracle::coset_paths(h, z)?;
            let got: PathSet = enumerate_paths(&r.reduced)?
                .iter()
                .map(|p| r.restore(&p.labels))
                .collect::<Result<_, _>>()?;
            let result = assert_equal(&got, &want);
            let detail = match &result {
                Ok(()) => format!("{} paths", want.len()),
                Err(m) => m.to_string(),
            };
            writeln!(s, "restored path set: {} ({detail})", pass(result.is_ok())).unwrap();
            result.is_ok()
        };
        if !ok {
            status = Status::VerificationFailed;
        }
    }
    Ok((s, status))
}

fn report_code_reduction(
    r: &ReducedCodeTrellis,
    g: &PolyMatrix,
    verify: bool,
) -> Result<(String, Status), CliError> {
    let mut s = String::new();
    describe_plan(&mut s, &r.plan, "G");
    writeln!(s, "restriction:").unwrap();
    for beta in r.original.states(0) {
        let res = r.restriction(beta)?;
        let forced: Vec<String> = res
            .forced
            .iter()
            .map(|&(j, k, b)| forced_text(j, k, Some(b)))
            .collect();
        writeln!(
            s,
            "  {} -> {}  forced: {}",
            r.original.format_state(beta),
            r.reduced.format_state(res.reduced_state),
            forced.join(", ")
        )
        .unwrap();
    }
    let mut status = Status::Ok;
    if verify {
        let n = r.original.len();
        let encoder = Encoder::new(g)?;
        let mut by_state: BTreeMap<u32, PathSet> = BTreeMap::new();
        for (u, y) in oracle::codeword_pairs(g, n)? {
            by_state
                .entry(encoder.state_at(&u, n as i64).bits)
                .or_default()
                .insert(y);
        }
        let total = r.original.num_states();
        let mut passed = 0;
        for beta in r.original.states(0) {
            let want = by_state.get(&beta).cloned().unwrap_or_default();
            let result = assert_equal(&r.restored_codewords(beta)?, &want);
            let detail = match &result {
                Ok(()) => format!("{} codewords", want.len()),
                Err(m) => m.to_string(),
            };
            writeln!(
                s,
                "subtrellis {}: {} ({detail})",
                r.original.format_state(beta),
                pass(result.is_ok())
            )
            .unwrap();
            passed += result.is_ok() as u32;
        }
        if passed == total {
            writeln!(s, "all {total} subtrellises embedded: pass").unwrap();
        } else {
            writeln!(s, "{passed} of {total} subtrellises embedded: FAIL").unwrap();
            status = Status::VerificationFailed;
        }
    }
    Ok((s, status))
}

pub fn shift(args: &ShiftArgs, restore: bool, out: &mut dyn Write) -> CmdResult {
    let plan: Shift = parse_file(&args.plan)?;
    let text = read(&args.paths)?;
    let mut s = String::new();
    for (idx, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let input_err = |source| CliError::Input {
            path: args.paths.clone(),
            source,
        };
        let x: SymbolSequence = body.parse().map_err(|e| match e {
            Error::Parse { column, message, .. } => input_err(Error::Parse {
                line: idx + 1,
                column,
                message,
            }),
            other => input_err(other),
        })?;
        let y = if restore { plan.restore(&x) } else { plan.apply(&x) }.map_err(input_err)?;
        writeln!(s, "{y}").unwrap();
    }
    match &args.output {
        Some(path) => emit(path, &s, out)?,
        None => print(out, &s)?,
    }
    Ok(Status::Ok)
}

pub fn verify(path: &Path, target: &Target, out: &mut dyn Write) -> CmdResult {
    let m: PolyMatrix = parse_file(path)?;
    let t = build(&m, target)?;
    let paths = enumerate_paths(&t)?;
    let mut s = summary(&t);
    let (want, by_state) = match (&target.error, target.code) {
        (Some(zpath), _) => {
            let z: SymbolSequence = parse_file(zpath)?;
            (oracle::coset_paths(&m, &z)?, Some(oracle::coset_paths_by_state(&m, &z)?))
        }
        (None, Some(n)) => (oracle::codewords(&m, n)?, None),
        (None, None) => return Err(CliError::Usage("either --error or --code is required".into())),
    };
    let result = assert_equal(&labels_of(&paths), &want);
    let detail = match &result {
        Ok(()) => format!("{} paths", want.len()),
        Err(mm) => mm.to_string(),
    };
    writeln!(s, "trellis paths vs brute force: {} ({detail})", pass(result.is_ok())).unwrap();
    let mut ok = result.is_ok();
    if let Some(by_state) = by_state {
        let mut passed = 0;
        for st in t.states(0) {
            let got = labels_of(&extract_subtrellis(&t, st)?);
            let want = by_state.get(&st).cloned().unwrap_or_default();
            passed += assert_equal(&got, &want).is_ok() as u32;
        }
        let all = passed == t.num_states();
        writeln!(s, "subtrellises vs brute force: {passed} of {} {}", t.num_states(), pass(all))
            .unwrap();
        ok &= all;
    }
    print(out, &s)?;
    Ok(if ok { Status::Ok } else { Status::VerificationFailed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backward_spec() {
        assert_eq!(parse_backward("2:2,3:2", 3).unwrap(), vec![0, 2, 2]);
        assert_eq!(parse_backward(" 1:1 ", 2).unwrap(), vec![1, 0]);
        assert!(parse_backward("0:1", 3).is_err());
        assert!(parse_backward("2-1", 3).is_err());
        assert!(parse_backward("2:x", 3).is_err());
    }
}
