//! Command implementations. Each command returns its full output as a string
//! so that the binary only has to print it and pick the exit code.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use ringcodes::oracle::{
    oracle_annihilator, oracle_check_pcs, oracle_code_from_pcs, oracle_code_from_presentation, oracle_decode,
    oracle_distance_distribution, oracle_fourier, oracle_generating_set, oracle_is_linear, oracle_kernel_set,
    oracle_min_distance, oracle_span, oracle_weight_distribution, ExplicitCode,
};
use ringcodes::{
    code_to_pcs, decode, distance_distribution, fourier_coeff_coset, fourier_coeff_pcs, min_distance,
    pcs_enumerator_poly, pcs_to_code, validate_pcs, weight_enumerator_linear, Budget, CodePresentation,
    ExponentSum, Matrix, ParityCheckSystem, RingElem, RingSpec, RingVec,
};

use crate::problem::{parse_problem, parse_vector, render_code, render_pcs, Problem};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    ToCode,
    /// `rows`, when given, are used as the rows of H.
    ToPcs { rows: Option<String> },
    Mindist,
    Decode { word: String },
    Kernel,
    IsLinear,
    Fourier { vector: Option<String>, all: bool },
    Enumerator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub json: bool,
    pub oracle: bool,
    pub budget: Budget,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            oracle: false,
            budget: Budget::DEFAULT,
        }
    }
}

/// Output of a command that ran to completion. `exit_code` is 2 when
/// `validate` found a violation and 0 otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    pub exit_code: i32,
}

impl Report {
    fn ok(output: String) -> Self {
        Report { output, exit_code: 0 }
    }
}

fn method(opts: &Options) -> &'static str {
    if opts.oracle {
        "oracle"
    } else {
        "pcs"
    }
}

pub fn elem_json(a: &RingElem) -> Value {
    match a.residues() {
        [r] => json!(r),
        rs => json!(rs),
    }
}

pub fn vec_json(x: &RingVec) -> Value {
    Value::Array(x.coords().iter().map(elem_json).collect())
}

fn vecs_json(xs: &[RingVec]) -> Value {
    Value::Array(xs.iter().map(vec_json).collect())
}

fn count_json(v: u128) -> Result<Value, CliError> {
    u64::try_from(v)
        .map(|v| json!(v))
        .map_err(|_| ringcodes::Error::Overflow("count too large for JSON").into())
}

fn ints_json(v: &[i128]) -> Result<Value, CliError> {
    v.iter()
        .map(|&c| {
            i64::try_from(c)
                .map(|c| json!(c))
                .map_err(|_| ringcodes::Error::Overflow("coefficient too large for JSON").into())
        })
        .collect::<Result<Vec<_>, CliError>>()
        .map(Value::Array)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serializable");
    s.push('\n');
    s
}

fn lines(xs: &[RingVec]) -> String {
    xs.iter().map(|x| format!("{x}\n")).collect()
}

fn presentation(problem: &Problem) -> Result<CodePresentation, CliError> {
    match problem {
        Problem::Pcs { spec, h, s } => Ok(pcs_to_code(&validate_pcs(spec, h.clone(), s.clone())?)?),
        Problem::Code {
            spec,
            n,
            generators,
            reps,
        } => Ok(CodePresentation::from_generators(spec, *n, generators.clone(), reps.clone())?),
    }
}

fn system(problem: &Problem) -> Result<ParityCheckSystem, CliError> {
    match problem {
        Problem::Pcs { spec, h, s } => Ok(validate_pcs(spec, h.clone(), s.clone())?),
        Problem::Code { .. } => Ok(code_to_pcs(&presentation(problem)?, None)?),
    }
}

/// The code as an explicit word set, built by scanning or closure only.
fn explicit(problem: &Problem, budget: Budget) -> Result<ExplicitCode, CliError> {
    match problem {
        Problem::Pcs { spec, h, s } => {
            oracle_check_pcs(spec, h, s, budget)?;
            Ok(oracle_code_from_pcs(&ParityCheckSystem::new(spec, h.clone(), s.clone())?, budget)?)
        }
        Problem::Code { .. } => Ok(oracle_code_from_presentation(&presentation(problem)?, budget)?),
    }
}

pub fn run(command: &Command, text: &str, opts: &Options) -> Result<Report, CliError> {
    let problem = parse_problem(text)?;
    match command {
        Command::Validate => cmd_validate(&problem, opts),
        Command::ToCode => cmd_to_code(&problem, opts),
        Command::ToPcs { rows } => cmd_to_pcs(&problem, rows.as_deref(), opts),
        Command::Mindist => cmd_mindist(&problem, opts),
        Command::Decode { word } => cmd_decode(&problem, word, opts),
        Command::Kernel => cmd_kernel(&problem, opts),
        Command::IsLinear => cmd_islinear(&problem, opts),
        Command::Fourier { vector, all } => cmd_fourier(&problem, vector.as_deref(), *all, opts),
        Command::Enumerator => cmd_enumerator(&problem, opts),
    }
}

fn violation_json(e: &ringcodes::Error) -> Value {
    use ringcodes::Error as E;
    match e {
        E::ConditionIViolation { row, col } => json!({"condition": "i", "row": row, "column": col}),
        E::ConditionIIViolation { first, second } => json!({"condition": "ii", "columns": [first, second]}),
        E::ConditionIIIViolation { syzygy } => json!({"condition": "iii", "syzygy": vec_json(syzygy)}),
        other => json!({"condition": null, "message": other.to_string()}),
    }
}

fn cmd_validate(problem: &Problem, opts: &Options) -> Result<Report, CliError> {
    let outcome = match problem {
        Problem::Pcs { spec, h, s } => {
            if opts.oracle {
                oracle_check_pcs(spec, h, s, opts.budget)
            } else {
                validate_pcs(spec, h.clone(), s.clone()).map(|_| ())
            }
        }
        Problem::Code { .. } => match presentation(problem) {
            Ok(pres) if opts.oracle => {
                // disjoint cosets give exactly s |D| words
                let code = oracle_code_from_presentation(&pres, opts.budget)?;
                let d = oracle_span(pres.spec(), pres.len(), pres.kernel().generators(), opts.budget)?;
                if (code.cardinality() as u128) == d.len() as u128 * pres.num_cosets() as u128 {
                    Ok(())
                } else {
                    Err(ringcodes::Error::InvalidPresentation("coset representatives overlap".into()))
                }
            }
            Ok(_) => Ok(()),
            Err(CliError::Core(e)) => Err(e),
            Err(other) => return Err(other),
        },
    };
    match outcome {
        Ok(()) => Ok(Report::ok(if opts.json {
            pretty(&json!({"method": method(opts), "valid": true}))
        } else {
            "PASS\n".into()
        })),
        Err(e) if CliError::Core(e.clone()).exit_code() == 2 => Ok(Report {
            output: if opts.json {
                pretty(&json!({"method": method(opts), "valid": false, "violation": violation_json(&e), "message": e.to_string()}))
            } else {
                format!("FAIL: {e}\n")
            },
            exit_code: 2,
        }),
        Err(e) => Err(e.into()),
    }
}

fn cmd_to_code(problem: &Problem, opts: &Options) -> Result<Report, CliError> {
    let Problem::Pcs { spec, .. } = problem else {
        return Err(CliError::Usage("to-code expects a pcs file".into()));
    };
    let (generators, reps) = if opts.oracle {
        let code = explicit(problem, opts.budget)?;
        (Vec::new(), code.words().iter().cloned().collect::<Vec<_>>())
    } else {
        let pres = presentation(problem)?;
        (pres.kernel().canonical_generators(), pres.reps().to_vec())
    };
    Ok(Report::ok(if opts.json {
        pretty(&json!({
            "method": method(opts),
            "ring": spec.to_string(),
            "kernel_generators": vecs_json(&generators),
            "representatives": vecs_json(&reps),
        }))
    } else {
        render_code(spec, &generators, &reps)
    }))
}

fn cmd_to_pcs(problem: &Problem, rows: Option<&str>, opts: &Options) -> Result<Report, CliError> {
    let Problem::Code { spec, n, generators, reps } = problem else {
        return Err(CliError::Usage("to-pcs expects a code file".into()));
    };
    if rows.is_some() && opts.oracle {
        return Err(CliError::Usage("--rows cannot be combined with --oracle".into()));
    }
    let (h, s) = if let Some(text) = rows {
        let given = text
            .split(';')
            .map(|r| check_word(spec, r, *n))
            .collect::<Result<Vec<_>, _>>()?;
        let pcs = code_to_pcs(&presentation(problem)?, Some(&given))?;
        (pcs.h().clone(), pcs.s().clone())
    } else if opts.oracle {
        let pres = presentation(problem)?;
        let d = oracle_span(spec, *n, generators, opts.budget)?;
        let dual = oracle_annihilator(spec, *n, &d, opts.budget)?;
        let mut rows = oracle_generating_set(spec, *n, &dual, opts.budget)?;
        if rows.is_empty() {
            rows.push(spec.zero_vec(*n));
        }
        let s_rows: Vec<RingVec> = rows
            .iter()
            .map(|hr| reps.iter().map(|d| spec.dot(hr, d)).collect::<ringcodes::Result<RingVec>>())
            .collect::<ringcodes::Result<_>>()?;
        let h = Matrix::new(rows, *n)?;
        let s = Matrix::new(s_rows, pres.num_cosets())?;
        oracle_check_pcs(spec, &h, &s, opts.budget)?;
        (h, s)
    } else {
        let pcs = system(problem)?;
        (pcs.h().clone(), pcs.s().clone())
    };
    Ok(Report::ok(if opts.json {
        pretty(&json!({
            "method": method(opts),
            "ring": spec.to_string(),
            "h": vecs_json(h.rows()),
            "s": vecs_json(s.rows()),
        }))
    } else {
        render_pcs(spec, &h, &s)
    }))
}

fn cmd_mindist(problem: &Problem, opts: &Options) -> Result<Report, CliError> {
    if opts.oracle {
        let d = oracle_min_distance(&explicit(problem, opts.budget)?, opts.budget)?;
        return Ok(Report::ok(if opts.json {
            pretty(&json!({"method": "oracle", "min_distance": d}))
        } else {
            format!("min_distance {d}\n")
        }));
    }
    let md = min_distance(&system(problem)?)?;
    Ok(Report::ok(if opts.json {
        pretty(&json!({
            "method": "pcs",
            "min_distance": md.distance,
            "witness": vec_json(&md.witness),
            "syndrome": vec_json(&md.syndrome),
        }))
    } else {
        format!("min_distance {}\nwitness {}\nsyndrome {}\n", md.distance, md.witness, md.syndrome)
    }))
}

fn check_word(spec: &RingSpec, word: &str, n: usize) -> Result<RingVec, CliError> {
    let x = parse_vector(spec, word)?;
    if x.len() != n {
        return Err(CliError::Usage(format!("word has length {}, expected {n}", x.len())));
    }
    Ok(x)
}

fn cmd_decode(problem: &Problem, word: &str, opts: &Options) -> Result<Report, CliError> {
    let spec = problem.spec();
    let y = check_word(spec, word, problem.len())?;
    if opts.oracle {
        let code = explicit(problem, opts.budget)?;
        let d = oracle_min_distance(&code, opts.budget)?;
        let radius = (d - 1) / 2;
        let (c, dist) = oracle_decode(&code, &y, radius)?.ok_or(ringcodes::Error::BeyondRadius { radius })?;
        let e = spec.sub_vecs(&y, &c);
        return Ok(Report::ok(if opts.json {
            pretty(&json!({
                "method": "oracle",
                "codeword": vec_json(&c),
                "error_vector": vec_json(&e),
                "error_weight": dist,
            }))
        } else {
            format!("codeword {c}\nerror_vector {e}\nerror_weight {dist}\n")
        }));
    }
    let out = decode(&system(problem)?, &y, None)?;
    Ok(Report::ok(if opts.json {
        pretty(&json!({
            "method": "pcs",
            "codeword": vec_json(&out.codeword),
            "coset_index": out.coset_index,
            "error_vector": vec_json(&out.error_vector),
            "error_weight": out.error_weight,
        }))
    } else {
        format!(
            "codeword {}\ncoset_index {}\nerror_vector {}\nerror_weight {}\n",
            out.codeword, out.coset_index, out.error_vector, out.error_weight
        )
    }))
}

fn cmd_kernel(problem: &Problem, opts: &Options) -> Result<Report, CliError> {
    let spec = problem.spec();
    let (generators, cardinality) = if opts.oracle {
        let set = oracle_kernel_set(&explicit(problem, opts.budget)?, opts.budget)?;
        (oracle_generating_set(spec, problem.len(), &set, opts.budget)?, set.len() as u128)
    } else {
        let k = system(problem)?.kernel()?;
        (k.canonical_generators(), k.cardinality())
    };
    Ok(Report::ok(if opts.json {
        pretty(&json!({
            "method": method(opts),
            "cardinality": count_json(cardinality)?,
            "generators": vecs_json(&generators),
        }))
    } else {
        format!("cardinality {cardinality}\ngenerators\n{}", lines(&generators))
    }))
}

fn cmd_islinear(problem: &Problem, opts: &Options) -> Result<Report, CliError> {
    let linear = if opts.oracle {
        oracle_is_linear(&explicit(problem, opts.budget)?, opts.budget)?
    } else {
        system(problem)?.is_linear()?
    };
    Ok(Report::ok(if opts.json {
        pretty(&json!({"method": method(opts), "linear": linear}))
    } else {
        format!("{linear}\n")
    }))
}

fn round12(v: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn exact_json(e: &ExponentSum) -> Value {
    json!({
        "order": e.order(),
        "terms": e.counts().iter().map(|(&k, &c)| json!([k, c as i64])).collect::<Vec<_>>(),
        "integer": e.to_integer().map(|v| v as i64),
    })
}

type CoefficientFn = dyn Fn(&RingVec) -> ringcodes::Result<ExponentSum>;

fn cmd_fourier(problem: &Problem, vector: Option<&str>, all: bool, opts: &Options) -> Result<Report, CliError> {
    let spec = problem.spec();
    let points: Vec<RingVec> = match (vector, all) {
        (Some(v), false) => vec![check_word(spec, v, problem.len())?],
        (None, true) => {
            // the coefficients vanish off D_C^perp
            let pres = presentation(problem)?;
            let dual = pres.kernel().annihilator();
            if opts.oracle {
                let d = oracle_span(spec, problem.len(), pres.kernel().generators(), opts.budget)?;
                oracle_annihilator(spec, problem.len(), &d, opts.budget)?.into_iter().collect()
            } else {
                dual.enumerate(opts.budget)?.collect()
            }
        }
        _ => return Err(CliError::Usage("fourier takes either a vector or --all".into())),
    };
    let mut entries = Vec::new();
    let mut text = String::new();
    if opts.oracle {
        let code = explicit(problem, opts.budget)?;
        for x in &points {
            let v = oracle_fourier(&code, x)?;
            let (re, im) = (round12(v.re), round12(v.im));
            entries.push(json!({"x": vec_json(x), "exact": null, "re": re, "im": im}));
            text.push_str(&format!("{x}  {re:.12} {im:+.12}i\n"));
        }
    } else {
        let coeff: Box<CoefficientFn> = match problem {
            Problem::Pcs { .. } => {
                let pcs = system(problem)?;
                Box::new(move |x| fourier_coeff_pcs(&pcs, x))
            }
            Problem::Code { .. } => {
                let pres = presentation(problem)?;
                Box::new(move |x| fourier_coeff_coset(&pres, x))
            }
        };
        for x in &points {
            let e = coeff(x)?;
            let v = e.eval();
            let (re, im) = (round12(v.re), round12(v.im));
            entries.push(json!({"x": vec_json(x), "exact": exact_json(&e), "re": re, "im": im}));
            text.push_str(&format!("{x}  {e}  = {re:.12} {im:+.12}i\n"));
        }
    }
    Ok(Report::ok(if opts.json {
        pretty(&json!({"method": method(opts), "coefficients": entries}))
    } else {
        text
    }))
}

fn cmd_enumerator(problem: &Problem, opts: &Options) -> Result<Report, CliError> {
    let n = problem.len();
    if opts.oracle {
        let code = explicit(problem, opts.budget)?;
        let d: Vec<i128> = oracle_distance_distribution(&code, opts.budget)?.into_iter().map(|v| v as i128).collect();
        let w = if oracle_is_linear(&code, opts.budget)? {
            let words: BTreeSet<RingVec> = code.words().clone();
            Some(oracle_weight_distribution(n, &words).into_iter().map(|v| v as i128).collect::<Vec<_>>())
        } else {
            None
        };
        return Ok(Report::ok(if opts.json {
            pretty(&json!({
                "method": "oracle",
                "n": n,
                "distance_distribution": ints_json(&d)?,
                "weight_enumerator": w.as_deref().map(ints_json).transpose()?,
            }))
        } else {
            let mut s = format!("D {d:?}\n");
            if let Some(w) = w {
                s.push_str(&format!("W {w:?}\n"));
            }
            s
        }));
    }
    let pcs = system(problem)?;
    let n_poly = pcs_enumerator_poly(&pcs, opts.budget)?;
    let d = distance_distribution(&pcs, opts.budget)?;
    let w = if pcs.is_linear()? {
        Some(weight_enumerator_linear(&pcs, opts.budget)?)
    } else {
        None
    };
    Ok(Report::ok(if opts.json {
        pretty(&json!({
            "method": "pcs",
            "n": n,
            "distance_distribution": ints_json(d.coeffs())?,
            "pcs_enumerator": ints_json(n_poly.coeffs())?,
            "weight_enumerator": w.as_ref().map(|w| ints_json(w.coeffs())).transpose()?,
        }))
    } else {
        let mut s = format!("D {:?}\nD(C;x,y) = {d}\nN {:?}\n", d.coeffs(), n_poly.coeffs());
        if let Some(w) = w {
            s.push_str(&format!("W(C;x,y) = {w}\n"));
        }
        s
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "Z6\npcs\n1 1 3 5 | 0 1 5\n0 4 2 2 | 0 2 4\n";

    fn run_text(cmd: Command, oracle: bool) -> Report {
        run(
            &cmd,
            EXAMPLE,
            &Options {
                oracle,
                ..Options::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn example_commands() {
        assert_eq!(run_text(Command::Validate, false).output, "PASS\n");
        assert!(run_text(Command::Mindist, false).output.starts_with("min_distance 2\n"));
        assert_eq!(run_text(Command::Mindist, true).output, "min_distance 2\n");
        assert!(run_text(Command::Enumerator, false).output.starts_with("D [216, 0, 6480, 17280, 22680]\n"));
        assert!(run_text(Command::Enumerator, true).output.starts_with("D [216, 0, 6480, 17280, 22680]\n"));
        assert_eq!(run_text(Command::IsLinear, false).output, "false\n");
        let f = run_text(
            Command::Fourier {
                vector: Some("4,2,2,4".into()),
                all: false,
            },
            false,
        );
        assert!(f.output.contains("= 216.000000000000 +0.000000000000i"), "{}", f.output);
    }

    #[test]
    fn round_trip_text() {
        let code = run_text(Command::ToCode, false).output;
        let back = run(&Command::ToPcs { rows: None }, &code, &Options::default()).unwrap().output;
        let oracle = Options {
            oracle: true,
            ..Options::default()
        };
        let words = run(&Command::ToCode, &back, &oracle).unwrap().output;
        assert_eq!(words, run_text(Command::ToCode, true).output);
        let same_h = run(
            &Command::ToPcs {
                rows: Some("1 1 3 5; 0 4 2 2".into()),
            },
            &code,
            &Options::default(),
        )
        .unwrap()
        .output;
        assert_eq!(same_h, EXAMPLE);
    }
}
