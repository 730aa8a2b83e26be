// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 well-formed query with a negative answer,
//! 2 invalid input, 3 internal limit reached.

use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Map, Value as Json};

use crate::error::Error;
use crate::exact::{check_discriminant, QuadIrr};
use crate::forms::{equivalent_sl, pell_fundamental, stabilizer_generator, Form};
use crate::groupoid::{orbit, Budget, DEFAULT_CAP};
use crate::lattice::Mat2;
use crate::solver::{enumerate, solve_proper, verify_representation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "hurwitz", version, about = "Solve ax^2 + 2bxy + cy^2 = m exactly over the integers")]
struct Args {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Safety cap on orbit and search lengths.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Read the form's middle argument as the full XY coefficient 2b (must be even).
    #[arg(long, global = true)]
    middle: bool,
    #[command(subcommand)]
    verb: VerbArgs,
}

#[derive(Subcommand, Debug)]
enum VerbArgs {
    /// Continued-fraction orbit of (p + q*sqrt(D))/r.
    #[command(allow_negative_numbers = true)]
    Orbit { p: BigInt, q: BigInt, r: BigInt, d: BigInt },
    /// Proper (SL) equivalence of [a1,b1,c1] and [a2,b2,c2].
    #[command(allow_negative_numbers = true)]
    Equiv { d: BigInt, a1: BigInt, b1: BigInt, c1: BigInt, a2: BigInt, b2: BigInt, c2: BigInt },
    /// Generator of the automorph group of [a,b,c].
    #[command(allow_negative_numbers = true)]
    Automorph { d: BigInt, a: BigInt, b: BigInt, c: BigInt },
    /// Fundamental solution of t^2 - D u^2 = 1.
    #[command(allow_negative_numbers = true)]
    Pell { d: BigInt },
    /// Proper representations of m by [a,b,c].
    #[command(allow_negative_numbers = true)]
    Solve {
        d: BigInt,
        a: BigInt,
        b: BigInt,
        c: BigInt,
        m: BigInt,
        /// List solutions with max(|x|,|y|) up to this bound.
        #[arg(long, default_value = "1000")]
        bound: BigInt,
    },
    /// Check whether (x, y) represents m by [a,b,c].
    #[command(allow_negative_numbers = true)]
    Verify { d: BigInt, a: BigInt, b: BigInt, c: BigInt, m: BigInt, x: BigInt, y: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verb {
    Orbit { x: QuadIrr },
    Equiv { f1: Form, f2: Form },
    Automorph { f: Form },
    Pell { delta: BigInt },
    Solve { f: Form, m: BigInt, bound: BigInt },
    Verify { f: Form, m: BigInt, x: BigInt, y: BigInt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub json: bool,
    pub cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// `--help` or `--version`: print and exit 0.
    Info(String),
    Usage(String),
}

impl ParseError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ParseError::Info(_) => EXIT_OK,
            ParseError::Usage(_) => EXIT_USAGE,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            ParseError::Info(s) | ParseError::Usage(s) => s,
        }
    }
}

fn usage(arg: &str, err: impl std::fmt::Display) -> ParseError {
    ParseError::Usage(format!("invalid argument {arg}: {err}"))
}

fn parse_delta(d: BigInt) -> Result<BigInt, ParseError> {
    check_discriminant(&d).map_err(|e| usage("D", e))?;
    Ok(d)
}

fn parse_form(delta: &BigInt, a: BigInt, b: BigInt, c: BigInt, middle: bool, name: &str) -> Result<Form, ParseError> {
    let b = if middle {
        let (half, rem) = b.div_rem(&BigInt::from(2));
        if rem != BigInt::from(0) {
            return Err(usage(name, format!("middle coefficient {b} is odd; forms use the even-middle convention")));
        }
        half
    } else {
        b
    };
    let f = Form::new(a, b, c).map_err(|e| usage(name, e))?;
    if &f.disc() != delta {
        return Err(usage(name, format!("form {f} has discriminant {}, expected D = {delta}", f.disc())));
    }
    Ok(f)
}

/// Parses and validates a full argument vector (program name first).
pub fn parse_args<I, S>(argv: I) -> Result<Command, ParseError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ParseError::Info(e.to_string()),
            _ => ParseError::Usage(e.to_string()),
        }
    })?;
    let mid = args.middle;
    let verb = match args.verb {
        VerbArgs::Orbit { p, q, r, d } => {
            let d = parse_delta(d)?;
            let x = QuadIrr::new(p, q, r, d).map_err(|e| usage("p q r", e))?;
            Verb::Orbit { x }
        }
        VerbArgs::Equiv { d, a1, b1, c1, a2, b2, c2 } => {
            let d = parse_delta(d)?;
            let f1 = parse_form(&d, a1, b1, c1, mid, "a1 b1 c1")?;
            let f2 = parse_form(&d, a2, b2, c2, mid, "a2 b2 c2")?;
            Verb::Equiv { f1, f2 }
        }
        VerbArgs::Automorph { d, a, b, c } => {
            let d = parse_delta(d)?;
            Verb::Automorph { f: parse_form(&d, a, b, c, mid, "a b c")? }
        }
        VerbArgs::Pell { d } => Verb::Pell { delta: parse_delta(d)? },
        VerbArgs::Solve { d, a, b, c, m, bound } => {
            let d = parse_delta(d)?;
            let f = parse_form(&d, a, b, c, mid, "a b c")?;
            if m == BigInt::from(0) {
                return Err(usage("m", Error::ZeroTarget));
            }
            if bound < BigInt::from(1) {
                return Err(usage("--bound", "must be at least 1"));
            }
            Verb::Solve { f, m, bound }
        }
        VerbArgs::Verify { d, a, b, c, m, x, y } => {
            let d = parse_delta(d)?;
            let f = parse_form(&d, a, b, c, mid, "a b c")?;
            Verb::Verify { f, m, x, y }
        }
    };
    Ok(Command { verb, json: args.json, cap: args.cap })
}

const JSON_SAFE: i64 = (1 << 53) - 1;

/// Integers up to 2⁵³−1 in magnitude as JSON numbers, larger ones as
/// decimal strings.
pub fn json_int(n: &BigInt) -> Json {
    match i64::try_from(n) {
        Ok(v) if (-JSON_SAFE..=JSON_SAFE).contains(&v) => json!(v),
        _ => Json::String(n.to_string()),
    }
}

fn json_mat(m: &Mat2) -> Json {
    let [p, q, r, s] = m.entries().map(json_int);
    json!([[p, q], [r, s]])
}

fn json_form(f: &Form) -> Json {
    json!([json_int(f.a()), json_int(f.b()), json_int(f.c())])
}

fn json_pair(p: &(BigInt, BigInt)) -> Json {
    json!([json_int(&p.0), json_int(&p.1)])
}

fn json_qi(x: &QuadIrr) -> Json {
    let (p, q, r) = x.as_triple();
    json!({"p": json_int(&p), "q": json_int(&q), "r": json_int(&r), "delta": json_int(x.delta()), "text": x.to_string()})
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

struct Outcome {
    code: i32,
    inputs: Json,
    result: Json,
    lines: Vec<String>,
}

fn execute(verb: &Verb, budget: &Budget) -> Result<Outcome, Error> {
    let out = match verb {
        Verb::Orbit { x } => {
            let o = orbit(x, budget)?;
            let pre = o.preperiod().len();
            let (head, tail) = o.quotients().split_at(pre);
            let lines = vec![
                format!("point={x}"),
                format!("quotients=[{}; {}]", join(head), join(tail)),
                format!("preperiod={pre}"),
                format!("period={}", o.period()),
                format!("preperiod_points={}", join(o.preperiod())),
                format!("cycle_points={}", join(o.cycle())),
            ];
            Outcome {
                code: EXIT_OK,
                inputs: json_qi(x),
                result: json!({
                    "preperiod_quotients": head.iter().map(json_int).collect::<Vec<_>>(),
                    "cycle_quotients": tail.iter().map(json_int).collect::<Vec<_>>(),
                    "preperiod": o.preperiod().iter().map(json_qi).collect::<Vec<_>>(),
                    "cycle": o.cycle().iter().map(json_qi).collect::<Vec<_>>(),
                }),
                lines,
            }
        }
        Verb::Equiv { f1, f2 } => {
            let inputs = json!({"delta": json_int(&f1.disc()), "f1": json_form(f1), "f2": json_form(f2)});
            match equivalent_sl(f1, f2, budget)? {
                Some(h) => Outcome {
                    code: EXIT_OK,
                    inputs,
                    result: json!({"equivalent": true, "matrix": json_mat(&h)}),
                    lines: vec!["EQUIVALENT".into(), format!("matrix={h}")],
                },
                None => Outcome {
                    code: EXIT_NEGATIVE,
                    inputs,
                    result: json!({"equivalent": false}),
                    lines: vec!["NOT_EQUIVALENT".into()],
                },
            }
        }
        Verb::Automorph { f } => {
            let mut a = stabilizer_generator(f, budget)?;
            if a.trace() < BigInt::from(0) {
                a = -a;
            }
            Outcome {
                code: EXIT_OK,
                inputs: json!({"delta": json_int(&f.disc()), "form": json_form(f)}),
                result: json!({"automorph": json_mat(&a), "trace": json_int(&a.trace())}),
                lines: vec![format!("automorph={a}"), format!("trace={}", a.trace())],
            }
        }
        Verb::Pell { delta } => {
            let (t, u) = pell_fundamental(delta, budget)?;
            Outcome {
                code: EXIT_OK,
                inputs: json!({"delta": json_int(delta)}),
                result: json!({"t": json_int(&t), "u": json_int(&u)}),
                lines: vec![format!("t={t} u={u}")],
            }
        }
        Verb::Solve { f, m, bound } => {
            let report = solve_proper(f, m, budget)?;
            let mut lines = vec![format!("form={f} m={m} delta={}", report.delta), format!("classes={}", report.classes.len())];
            let mut classes = Vec::new();
            let mut solutions = Vec::new();
            for c in &report.classes {
                lines.push(format!(
                    "class n={} attached={} base_matrix={} base_solution=({},{}) automorph={}",
                    c.n, c.attached, c.base_matrix, c.base_solution.0, c.base_solution.1, c.automorph
                ));
                let sols = enumerate(c, bound)?;
                for s in &sols {
                    solutions.push((c.n.clone(), s.clone()));
                }
                classes.push(json!({
                    "n": json_int(&c.n),
                    "attached": json_form(&c.attached),
                    "base_matrix": json_mat(&c.base_matrix),
                    "base_solution": json_pair(&c.base_solution),
                    "automorph": json_mat(&c.automorph),
                    "solutions": sols.iter().map(json_pair).collect::<Vec<_>>(),
                }));
            }
            lines.push(format!("solutions={} bound={bound}", solutions.len()));
            for (n, (x, y)) in &solutions {
                lines.push(format!("solution=({x},{y}) n={n}"));
            }
            if report.classes.is_empty() {
                lines.push("NO_SOLUTIONS".into());
            }
            Outcome {
                code: if report.classes.is_empty() { EXIT_NEGATIVE } else { EXIT_OK },
                inputs: json!({"delta": json_int(&report.delta), "form": json_form(f), "m": json_int(m), "bound": json_int(bound)}),
                result: json!({"classes": classes}),
                lines,
            }
        }
        Verb::Verify { f, m, x, y } => {
            let (is_rep, proper) = verify_representation(f, m, x, y);
            Outcome {
                code: if is_rep { EXIT_OK } else { EXIT_NEGATIVE },
                inputs: json!({"delta": json_int(&f.disc()), "form": json_form(f), "m": json_int(m), "x": json_int(x), "y": json_int(y)}),
                result: json!({"representation": is_rep, "proper": proper, "value": json_int(&f.eval(x, y))}),
                lines: vec![format!("representation={is_rep} proper={proper}"), format!("value={}", f.eval(x, y))],
            }
        }
    };
    Ok(out)
}

fn verb_name(verb: &Verb) -> &'static str {
    match verb {
        Verb::Orbit { .. } => "orbit",
        Verb::Equiv { .. } => "equiv",
        Verb::Automorph { .. } => "automorph",
        Verb::Pell { .. } => "pell",
        Verb::Solve { .. } => "solve",
        Verb::Verify { .. } => "verify",
    }
}

/// Runs a validated command, returning the exit code and the text to print.
pub fn run(cmd: &Command) -> (i32, String) {
    let budget = Budget::new(cmd.cap);
    let start = Instant::now();
    let outcome = match execute(&cmd.verb, &budget) {
        Ok(o) => o,
        Err(e @ Error::InternalLimit(_)) => return (EXIT_LIMIT, format!("error: {e}\n")),
        Err(e) => return (EXIT_USAGE, format!("error: {e}\n")),
    };
    if cmd.json {
        let mut stats = Map::new();
        stats.insert("steps".into(), json!(budget.steps()));
        stats.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
        let doc = json!({
            "verb": verb_name(&cmd.verb),
            "inputs": outcome.inputs,
            "result": outcome.result,
            "stats": stats,
        });
        (outcome.code, format!("{doc}\n"))
    } else {
        let mut text = outcome.lines.join("\n");
        text.push('\n');
        (outcome.code, text)
    }
}
